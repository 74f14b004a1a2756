#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "hypertess/error.hpp"
#include "hypertess/io.hpp"
#include "hypertess/set_models.hpp"
#include "test_util.hpp"

using namespace hypertess;
using hypertess::testing::temp_path;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string tmp(const std::string& name) { return temp_path(name).string(); }

}  // namespace

TEST_CASE("gen is deterministic") {
  const auto a = tmp("cli_gen_a.hpm");
  const auto b = tmp("cli_gen_b.hpm");
  CHECK(run_cli({"gen", "--seed", "7", "--m", "100", "--n", "10", "--out", a}).code == 0);
  CHECK(run_cli({"gen", "--seed", "7", "--m", "100", "--n", "10", "--out", b}).code == 0);
  CHECK(file_bytes(a) == file_bytes(b));
  CHECK(file_bytes(a).size() == 4 + 4 + 4 * 8 + 100 * 10 * 8);
  CHECK(read_matrix(std::filesystem::path(a)) == gaussian_matrix({7, 0}, 100, 10));
}

TEST_CASE("usage errors") {
  const auto r = run_cli({"gen", "--n", "10", "--out", tmp("x.hpm")});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("--m") != std::string::npos);
  CHECK(run_cli({}).code == cli::kUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
  CHECK(run_cli({"gen", "--m", "0", "--n", "3", "--out", tmp("x.hpm")}).code == cli::kUsage);
  CHECK(run_cli({"audit", "--model", "sphere:n=3"}).code == cli::kUsage);
  CHECK(run_cli({"audit", "--model", "cube:n=3", "--m", "4"}).code == cli::kUsage);
  CHECK(run_cli({"--help"}).code == cli::kSuccess);
}

TEST_CASE("io errors") {
  CHECK(run_cli({"embed", "--matrix", tmp("missing.hpm"), "--input", tmp("missing.csv"), "--out", tmp("o.hpc")})
            .code == cli::kIoFailure);
  const auto junk = tmp("junk.hpm");
  std::ofstream(junk) << "not a matrix";
  CHECK(run_cli({"audit", "--model", "sphere:n=3", "--matrix", junk}).code == cli::kIoFailure);
  CHECK(run_cli({"graph", "--codes", junk, "--out", tmp("g.dot")}).code == cli::kIoFailure);
}

TEST_CASE("gen then embed zero points") {
  const auto mat = tmp("cli_zero.hpm");
  const auto pts = tmp("cli_zero.csv");
  const auto codes = tmp("cli_zero.hpc");
  std::ofstream(pts) << "";
  REQUIRE(run_cli({"gen", "--seed", "1", "--m", "70", "--n", "4", "--out", mat}).code == 0);
  const auto r = run_cli({"embed", "--matrix", mat, "--input", pts, "--out", codes});
  REQUIRE(r.code == 0);
  const auto bytes = file_bytes(codes);
  REQUIRE(bytes.size() == 24);
  CHECK(bytes.substr(0, 4) == "HPC1");
  const auto file = read_codes(std::filesystem::path(codes));
  CHECK(file.m == 70);
  CHECK(file.codes.empty());
}

TEST_CASE("embed matches the library") {
  const auto mat = tmp("cli_embed.hpm");
  const auto pts = tmp("cli_embed.csv");
  const auto out = tmp("cli_embed.hpc");
  const auto sample = sample_points(SetModel::sphere(5), 30, {3, 1});
  std::vector<Vector> raw;
  for (const auto& p : sample) raw.push_back(p.vector());
  write_points_csv(std::filesystem::path(pts), raw);
  REQUIRE(run_cli({"gen", "--seed", "3", "--m", "90", "--n", "5", "--out", mat}).code == 0);
  REQUIRE(run_cli({"embed", "--matrix", mat, "--input", pts, "--out", out, "--threads", "3"}).code == 0);
  CHECK(read_codes(std::filesystem::path(out)).codes == batch_embed(gaussian_matrix({3, 0}, 90, 5), sample));
}

TEST_CASE("audit") {
  SUBCASE("single-point finite model") {
    const auto pts = tmp("cli_one.csv");
    std::ofstream(pts) << "0.6,0.8\n";
    const auto r = run_cli({"audit", "--model", "finite:path=" + pts, "--m", "50", "--pairs", "10"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["delta_max"] == 0.0);
  }
  SUBCASE("soft bound") {
    const auto r = run_cli({"audit", "--model", "sphere:n=5", "--m", "500", "--pairs", "200", "--t", "0.1",
                            "--delta", "0.15", "--seed", "4"});
    const auto j = json::parse(r.out);
    CHECK(j["bound"].get<double>() == doctest::Approx(0.35));
    CHECK(j["t"] == 0.1);
    CHECK(r.code == (j["passed"].get<bool>() ? 0 : 1));
  }
  SUBCASE("failing bound gives exit 1") {
    const auto r = run_cli({"audit", "--model", "sphere:n=5", "--m", "3", "--pairs", "200", "--delta", "0.001"});
    CHECK(r.code == cli::kAuditFailed);
    CHECK(json::parse(r.out)["passed"] == false);
  }
  SUBCASE("report round trip via argv") {
    const auto report = tmp("cli_audit.json");
    const std::vector<std::string> args{"audit", "--model", "sparse:n=12,s=3", "--m", "300", "--points", "80",
                                        "--seed", "11", "--t", "0.05", "--report", report};
    REQUIRE(run_cli(args).code == 0);
    const auto first = json::parse(file_bytes(report));
    CHECK(first["config"]["seed"] == 11);
    CHECK(first["config"]["model"] == "sparse:n=12,s=3");
    CHECK(first["pairs"] == 80 * 79 / 2);
    const auto argv = first["argv"].get<std::vector<std::string>>();
    CHECK(argv == args);
    REQUIRE(run_cli(argv).code == 0);
    const auto second = json::parse(file_bytes(report));
    CHECK(second["delta_max"] == first["delta_max"]);
    CHECK(second["mean_abs_error"] == first["mean_abs_error"]);
  }
  SUBCASE("thread count never changes the report") {
    auto base = std::vector<std::string>{"audit", "--model", "sphere:n=6", "--m", "250", "--pairs", "300",
                                         "--seed", "12", "--t", "0.02"};
    auto one = base, four = base;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    auto j1 = json::parse(run_cli(one).out);
    auto j4 = json::parse(run_cli(four).out);
    j1.erase("config");
    j1.erase("argv");
    j4.erase("config");
    j4.erase("argv");
    CHECK(j1 == j4);
  }
  SUBCASE("matrix dimension clash") {
    const auto mat = tmp("cli_clash.hpm");
    REQUIRE(run_cli({"gen", "--m", "5", "--n", "4", "--out", mat}).code == 0);
    CHECK(run_cli({"audit", "--model", "sphere:n=3", "--matrix", mat}).code == cli::kUsage);
  }
  SUBCASE("csv summary") {
    const auto r = run_cli({"audit", "--model", "sphere:n=4", "--m", "50", "--pairs", "5", "--csv"});
    CHECK(r.out.rfind("delta_max,mean_abs_error,pairs,bound,passed\n", 0) == 0);
  }
}

TEST_CASE("meanwidth") {
  const auto r = run_cli({"meanwidth", "--model", "sphere:n=10", "--trials", "200000", "--seed", "5"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  const double w = j["gaussian_width"];
  const double se = j["std_error"];
  CHECK(std::abs(w - 3.084327759799864) <= 3.0 * se);
  CHECK(run_cli({"meanwidth", "--model", "sphere:n=10", "--trials", "1"}).code == cli::kUsage);
}

TEST_CASE("jl") {
  CHECK(cli::jl_sample_size(2, 0.2, 0.01) == 84);
  CHECK(cli::jl_sample_size(32, 0.15, 0.01) == 272);
  CHECK_THROWS_AS(cli::jl_sample_size(1, 0.2, 0.01), Error);
  CHECK(cli::jl_sample_size(1000, 1.0, 0.01) <= 10);

  SUBCASE("antipodal pair through the CLI") {
    const auto pts = tmp("cli_jl2.csv");
    std::ofstream(pts) << "1,0,0\n-1,0,0\n";
    const auto r = run_cli({"jl", "--input", pts, "--delta", "0.2", "--eta", "0.01", "--seed", "2"});
    const auto j = json::parse(r.out);
    CHECK(j["chosen_m"] == 84);
    CHECK(j["m"] == 84);
    CHECK(j["delta_max"] == 0.0);
    CHECK(r.code == 0);
  }
  SUBCASE("delta near one always passes") {
    const auto points = sample_points(SetModel::sphere(4), 50, {6, 1});
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(cli::run_jl(points, 1.0, 0.01, seed).report.passed);
  }
  SUBCASE("single point is rejected") {
    const auto pts = tmp("cli_jl1.csv");
    std::ofstream(pts) << "1,0\n";
    CHECK(run_cli({"jl", "--input", pts, "--delta", "0.2"}).code == cli::kUsage);
  }
}

TEST_CASE("graph command") {
  const auto codes = tmp("cli_same.hpc");
  const std::vector<BitCode> same(5, BitCode::from_string("10110"));
  write_codes(std::filesystem::path(codes), same, 5);
  const auto dot = tmp("cli_same.dot");
  REQUIRE(run_cli({"graph", "--codes", codes, "--out", dot}).code == 0);
  const auto text = file_bytes(dot);
  CHECK(text.find("n0 [label=") != std::string::npos);
  CHECK(text.find("n1") == std::string::npos);
  CHECK(text.find("--") == std::string::npos);

  const auto js = tmp("cli_same.json");
  REQUIRE(run_cli({"graph", "--codes", codes, "--out", js}).code == 0);
  CHECK(json::parse(file_bytes(js))["nodes"].size() == 1);
  CHECK(run_cli({"graph", "--codes", codes, "--out", dot, "--format", "svg"}).code == cli::kUsage);
}

TEST_CASE("cells command") {
  const auto r = run_cli({"cells", "--model", "sparse:n=20,s=2", "--m", "4000", "--points", "500", "--delta", "0.5",
                          "--seed", "1"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["max_cell_diameter_euclidean"].get<double>() <= 0.5);
  CHECK(run_cli({"cells", "--model", "sphere:n=3", "--m", "2", "--points", "200", "--delta", "0.1"}).code ==
        cli::kAuditFailed);
}

TEST_CASE("l1 command") {
  const auto r = run_cli({"l1", "--model", "sphere:n=10", "--points", "100", "--m", "400", "--trials", "2000"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["count"] == 100);
  CHECK(j["z"].get<double>() >= 0.0);
  CHECK(j["z"].get<double>() <= j["z_bound"].get<double>() + 3.0 * 4.0 * j["width"]["std_error"].get<double>() / 20.0);
  CHECK(run_cli({"l1", "--model", "sphere:n=10", "--m", "400", "--delta", "1e-9"}).code == cli::kAuditFailed);
}

TEST_CASE("affine command") {
  const auto arr_path = tmp("cli_affine.hpa");
  const auto r = run_cli({"affine", "--cloud", "100", "--dim", "2", "--lift-t", "4", "--m", "20000", "--delta", "0.2",
                          "--seed", "8", "--out", arr_path});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["kind"] == "affine");
  CHECK(j["lambda"].get<double>() == doctest::Approx(4.0 * 3.141592653589793));
  const auto arr = read_arrangement(std::filesystem::path(arr_path));
  CHECK(arr.m == 20000);
  CHECK(arr.n == 2);
  CHECK(run_cli({"affine", "--cloud", "1", "--m", "10"}).code == cli::kUsage);
  CHECK(run_cli({"affine", "--cloud", "10", "--m", "10", "--lift-t", "1"}).code == cli::kUsage);
}

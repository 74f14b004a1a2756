#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hypertess/affine.hpp"
#include "hypertess/error.hpp"
#include "hypertess/graph.hpp"
#include "hypertess/io.hpp"
#include "hypertess/random.hpp"
#include "hypertess/report.hpp"
#include "hypertess/set_models.hpp"

namespace hypertess::cli {
namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::string model;
  std::size_t m = 0;
  std::size_t n = 0;
  double t = 0.0;
  double lift_t = 4.0;
  std::optional<double> delta;
  double eta = 0.01;
  std::size_t trials = 10000;
  std::size_t pairs = 1000;
  std::size_t points = 0;
  std::size_t cloud = 0;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string input;
  std::string matrix;
  std::string codes;
  std::string out;
  std::string report;
  std::string format;
  bool csv = false;
};

json config_json(const RunConfig& c) {
  return {
      {"command", c.command}, {"model", c.model},     {"m", c.m},
      {"n", c.n},             {"t", c.t},             {"lift_t", c.lift_t},
      {"delta", c.delta ? json(*c.delta) : json(nullptr)},
      {"eta", c.eta},         {"trials", c.trials},   {"pairs", c.pairs},
      {"points", c.points},   {"cloud", c.cloud},     {"dim", c.dim},
      {"seed", c.seed},       {"threads", c.threads}, {"input", c.input},
      {"matrix", c.matrix},   {"codes", c.codes},     {"out", c.out},
      {"report", c.report},
  };
}

Seed matrix_seed(const RunConfig& c) { return {c.seed, streams::kMatrix}; }
Seed sampling_seed(const RunConfig& c) { return {c.seed, streams::kSampling}; }
Seed pair_seed(const RunConfig& c) { return {c.seed, streams::kPairSelection}; }

void need(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, message);
}

// Loads --matrix when given, otherwise draws m x dim from the matrix stream.
GaussianMatrix arrangement_for(const RunConfig& c, std::size_t dim) {
  if (!c.matrix.empty()) {
    GaussianMatrix a = read_matrix(c.matrix);
    if (a.cols() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(a.cols()) +
                                                    " columns but the model lives in dimension " +
                                                    std::to_string(dim));
    }
    return a;
  }
  need(c.m > 0, "--m (or --matrix) is required");
  return gaussian_matrix(matrix_seed(c), c.m, dim);
}

std::vector<UnitVector> to_unit(std::vector<Vector> raw) {
  std::vector<UnitVector> out;
  out.reserve(raw.size());
  for (auto& p : raw) out.emplace_back(std::move(p));
  return out;
}

class Emitter {
 public:
  Emitter(const RunConfig& config, const std::vector<std::string>& argv, std::ostream& out)
      : config_(config), argv_(argv), out_(out) {}

  void emit(json report, const std::vector<std::pair<std::string, std::string>>& csv_row) {
    report["config"] = config_json(config_);
    report["argv"] = argv_;
    if (!config_.report.empty()) {
      std::ofstream f(config_.report);
      if (!f) throw Error(ErrorKind::Io, "cannot write report '" + config_.report + "'");
      f << report.dump(2) << '\n';
    }
    if (config_.csv) {
      for (std::size_t k = 0; k < csv_row.size(); ++k) out_ << (k ? "," : "") << csv_row[k].first;
      out_ << '\n';
      for (std::size_t k = 0; k < csv_row.size(); ++k) out_ << (k ? "," : "") << csv_row[k].second;
      out_ << '\n';
    } else if (config_.report.empty()) {
      out_ << report.dump(2) << '\n';
    }
  }

 private:
  const RunConfig& config_;
  const std::vector<std::string>& argv_;
  std::ostream& out_;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

int cmd_gen(const RunConfig& c, Emitter& emit) {
  const GaussianMatrix a = gaussian_matrix(matrix_seed(c), c.m, c.n);
  write_matrix(c.out, a);
  emit.emit({{"kind", "gen"}, {"m", c.m}, {"n", c.n}, {"checksum", matrix_checksum(a)}},
            {{"m", std::to_string(c.m)}, {"n", std::to_string(c.n)}});
  return kSuccess;
}

int cmd_embed(const RunConfig& c, Emitter& emit) {
  const GaussianMatrix a = read_matrix(c.matrix);
  const auto points = read_points(c.input);
  const auto codes = batch_embed(a, points, c.threads);
  write_codes(c.out, codes, a.rows());
  emit.emit({{"kind", "embed"}, {"count", codes.size()}, {"m", a.rows()}},
            {{"count", std::to_string(codes.size())}, {"m", std::to_string(a.rows())}});
  return kSuccess;
}

int cmd_audit(const RunConfig& c, Emitter& emit) {
  const SetModel model = parse_model_spec(c.model);
  const GaussianMatrix a = arrangement_for(c, model.dimension());

  std::vector<UnitVector> points;
  std::vector<IndexPair> pairs;
  if (c.points > 0) {
    points = sample_points(model, c.points, sampling_seed(c), c.threads);
    pairs = select_pairs(points, c.pairs, pair_seed(c));
  } else {
    // Independent pairs: points 2k and 2k+1 form pair k.
    need(c.pairs > 0, "--pairs must be positive");
    points = sample_points(model, 2 * c.pairs, sampling_seed(c), c.threads);
    pairs.reserve(c.pairs);
    for (std::size_t k = 0; k < c.pairs; ++k) pairs.push_back({2 * k, 2 * k + 1});
  }
  if (pairs.empty()) pairs.push_back({0, 0});

  std::optional<double> bound;
  if (c.delta) bound = soft_bound(*c.delta, c.t);
  AuditReport report = audit_uniformity(a, points, pairs, c.t, bound, c.threads);
  report.seed = c.matrix.empty() ? matrix_seed(c) : a.seed();
  json j = to_json(report);
  j["model"] = model.name();
  emit.emit(j, {{"delta_max", num(report.delta_max)},
                {"mean_abs_error", num(report.mean_abs_error)},
                {"pairs", std::to_string(report.pairs_evaluated)},
                {"bound", bound ? num(*bound) : ""},
                {"passed", report.passed ? "true" : "false"}});
  return bound && !report.passed ? kAuditFailed : kSuccess;
}

int cmd_meanwidth(const RunConfig& c, Emitter& emit) {
  const SetModel model = parse_model_spec(c.model);
  const MeanWidthEstimate est = mean_width(model, c.trials, sampling_seed(c), c.threads);
  json j = to_json(est);
  j["model"] = model.name();
  emit.emit(j, {{"gaussian_width", num(est.gaussian_width)},
                {"std_error", num(est.std_error)},
                {"spherical_width", num(est.spherical_width)},
                {"diff_width", num(est.diff_width)}});
  return kSuccess;
}

int cmd_cells(const RunConfig& c, Emitter& emit) {
  const SetModel model = parse_model_spec(c.model);
  const GaussianMatrix a = arrangement_for(c, model.dimension());
  const std::size_t count = c.points > 0 ? c.points : 500;
  const auto points = sample_points(model, count, sampling_seed(c), c.threads);
  const auto codes = batch_embed(a, points, c.threads);
  const CellReport cells = cell_analysis(codes, points);

  json j = to_json(cells);
  j["model"] = model.name();
  j["m"] = a.rows();
  j["n"] = a.cols();
  bool passed = true;
  if (c.delta) {
    passed = cells.max_cell_diameter_euclidean <= *c.delta;
    j["bound"] = *c.delta;
    j["passed"] = passed;
  }
  emit.emit(j, {{"cell_count", std::to_string(cells.cell_count)},
                {"max_cell_diameter_geodesic", num(cells.max_cell_diameter_geodesic)},
                {"max_cell_diameter_euclidean", num(cells.max_cell_diameter_euclidean)},
                {"passed", passed ? "true" : "false"}});
  return passed ? kSuccess : kAuditFailed;
}

int cmd_graph(const RunConfig& c, Emitter& emit) {
  const CodeFile file = read_codes(c.codes);
  const TessellationGraph g = build_tessellation_graph(file.codes);
  std::string format = c.format;
  if (format.empty()) format = c.out.ends_with(".json") ? "json" : "dot";
  need(format == "dot" || format == "json", "--format must be dot or json");
  {
    std::ofstream f(c.out);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + c.out + "'");
    if (format == "dot") {
      f << to_dot(g);
    } else {
      f << to_json(g).dump(2) << '\n';
    }
  }
  emit.emit({{"kind", "graph"}, {"nodes", g.nodes.size()}, {"edges", g.edges.size()}, {"m", file.m}},
            {{"nodes", std::to_string(g.nodes.size())}, {"edges", std::to_string(g.edges.size())}});
  return kSuccess;
}

int cmd_l1(const RunConfig& c, Emitter& emit) {
  std::vector<Vector> points;
  std::optional<SetModel> model;
  if (!c.input.empty()) {
    points = read_points(c.input);
    need(!points.empty(), "input has no points");
    model = SetModel::finite(to_unit(points));
  } else {
    model = parse_model_spec(c.model);
    const std::size_t count = c.points > 0 ? c.points : 100;
    for (auto& p : sample_points(*model, count, sampling_seed(c), c.threads)) points.push_back(p.vector());
  }
  const GaussianMatrix a = arrangement_for(c, points.front().size());
  const L1Stat stat = l1_embedding_stat(a, points, c.threads);

  // Width of the audited finite set drives the 4 w(K) / sqrt(m) bound on Z.
  std::vector<UnitVector> unit = to_unit(points);
  const MeanWidthEstimate w =
      mean_width(SetModel::finite(std::move(unit)), std::max<std::size_t>(c.trials, 2),
                 {c.seed, streams::kSampling + 16}, c.threads);
  const double z_bound = 4.0 * w.gaussian_width / std::sqrt(static_cast<double>(a.rows()));

  json j = to_json(stat);
  j["m"] = a.rows();
  j["n"] = a.cols();
  j["count"] = points.size();
  j["width"] = to_json(w);
  j["z_bound"] = z_bound;
  bool passed = true;
  if (c.delta) {
    passed = stat.pair_defect <= *c.delta;
    j["bound"] = *c.delta;
    j["passed"] = passed;
  }
  emit.emit(j, {{"z", num(stat.z)}, {"pair_defect", num(stat.pair_defect)}, {"z_bound", num(z_bound)}});
  return passed ? kSuccess : kAuditFailed;
}

int cmd_affine(const RunConfig& c, Emitter& emit) {
  std::vector<Vector> raw;
  if (!c.input.empty()) {
    raw = read_points(c.input);
  } else {
    need(c.cloud >= 2, "--input or --cloud N (N >= 2) is required");
    need(c.dim >= 1, "--dim must be positive");
    RandomStream stream(sampling_seed(c));
    raw.assign(c.cloud, Vector(c.dim));
    for (auto& p : raw) stream.fill_gaussian(p);
  }
  const NormalizedPoints normalized = normalize_diameter(raw);
  need(c.m > 0, "--m is required");
  AffineArrangement arr = build_affine_arrangement(normalized.points, c.lift_t, c.m, matrix_seed(c));
  arr.base_point = normalized.base_point;
  if (!c.out.empty()) write_arrangement(c.out, arr);

  const auto pairs = all_pairs(normalized.points.size());
  const AuditReport report = audit_affine(arr, normalized.points, pairs, c.delta, c.threads);
  json j = to_json(report);
  j["lift_t"] = c.lift_t;
  j["scale"] = normalized.scale;
  j["lift_constant"] = lift_distortion_constant(normalized.points, pairs, c.lift_t);
  emit.emit(j, {{"delta_max", num(report.delta_max)},
                {"mean_abs_error", num(report.mean_abs_error)},
                {"lambda", num(arr.lambda)},
                {"passed", report.passed ? "true" : "false"}});
  return c.delta && !report.passed ? kAuditFailed : kSuccess;
}

int cmd_jl(const RunConfig& c, Emitter& emit) {
  const auto points = to_unit(read_points(c.input));
  const JlResult result = run_jl(points, *c.delta, c.eta, c.seed, c.threads);
  json j = to_json(result.report);
  j["kind"] = "jl";
  j["eta"] = c.eta;
  j["chosen_m"] = result.m;
  emit.emit(j, {{"m", std::to_string(result.m)},
                {"delta_max", num(result.report.delta_max)},
                {"passed", result.report.passed ? "true" : "false"}});
  return result.report.passed ? kSuccess : kAuditFailed;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::Format:
      return kIoFailure;
    default:
      return kUsage;
  }
}

}  // namespace

std::size_t jl_sample_size(std::size_t count, double delta, double eta) {
  if (count < 2) throw Error(ErrorKind::InvalidArgument, "dimension reduction needs |K| >= 2");
  if (!(delta > 0.0) || !(eta > 0.0) || !(eta < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "need delta > 0 and 0 < eta < 1");
  }
  const double numerator = 2.0 * std::log(static_cast<double>(count)) + std::log(2.0 / eta);
  return static_cast<std::size_t>(std::ceil(numerator / (2.0 * delta * delta)));
}

JlResult run_jl(std::span<const UnitVector> points, double delta, double eta, std::uint64_t seed,
                std::size_t threads) {
  JlResult result;
  result.m = jl_sample_size(points.size(), delta, eta);
  const GaussianMatrix a = gaussian_matrix({seed, streams::kMatrix}, result.m, points.front().size());
  const auto pairs = all_pairs(points.size());
  result.report = audit_uniformity(a, points, pairs, 0.0, delta, threads);
  return result;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Random hyperplane tessellations: generation, embedding and audits"};
  app.require_subcommand(1);

  auto common = [&c](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--threads", c.threads, "Worker threads (never changes results)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--report", c.report, "Write the JSON report here instead of stdout");
    sub->add_flag("--csv", c.csv, "Print a CSV summary on stdout");
  };

  auto* gen = app.add_subcommand("gen", "Write an HPM1 Gaussian matrix");
  common(gen);
  gen->add_option("--m", c.m, "Rows (hyperplanes)")->required()->check(CLI::PositiveNumber);
  gen->add_option("--n", c.n, "Columns (ambient dimension)")->required()->check(CLI::PositiveNumber);
  gen->add_option("--out", c.out, "Output HPM1 path")->required();

  auto* embed = app.add_subcommand("embed", "Sign-embed a point file into HPC1 codes");
  common(embed);
  embed->add_option("--matrix", c.matrix, "HPM1 matrix")->required();
  embed->add_option("--input", c.input, "Points (CSV or HPM1)")->required();
  embed->add_option("--out", c.out, "Output HPC1 path")->required();

  auto* audit = app.add_subcommand("audit", "Uniform-tessellation audit on sampled pairs");
  common(audit);
  audit->add_option("--model", c.model, "sphere:n=.. | sparse:n=..,s=.. | finite:path=..")->required();
  audit->add_option("--m", c.m, "Rows of a fresh Gaussian arrangement");
  audit->add_option("--matrix", c.matrix, "Use this HPM1 matrix instead of --m");
  audit->add_option("--t", c.t, "Soft threshold (0 = hard distance)");
  audit->add_option("--delta", c.delta, "Pass if delta_max <= delta + 2|t|");
  audit->add_option("--pairs", c.pairs, "Pairs to evaluate");
  audit->add_option("--points", c.points, "Audit pairs drawn from one sample of this many points");

  auto* mw = app.add_subcommand("meanwidth", "Monte-Carlo Gaussian mean width");
  common(mw);
  mw->add_option("--model", c.model, "Set model")->required();
  mw->add_option("--trials", c.trials, "Monte-Carlo trials")->check(CLI::Range(2UL, SIZE_MAX));

  auto* cells = app.add_subcommand("cells", "Cell occupancy and diameters");
  common(cells);
  cells->add_option("--model", c.model, "Set model")->required();
  cells->add_option("--m", c.m, "Rows of a fresh Gaussian arrangement");
  cells->add_option("--matrix", c.matrix, "Use this HPM1 matrix instead of --m");
  cells->add_option("--points", c.points, "Sample size (default 500)");
  cells->add_option("--delta", c.delta, "Pass if the largest cell diameter <= delta");

  auto* graph = app.add_subcommand("graph", "Export the tessellation graph of a code file");
  common(graph);
  graph->add_option("--codes", c.codes, "HPC1 code file")->required();
  graph->add_option("--out", c.out, "Output path (.dot or .json)")->required();
  graph->add_option("--format", c.format, "dot | json (default from extension)");

  auto* l1 = app.add_subcommand("l1", "l1 embedding defect of a sampled or given set");
  common(l1);
  l1->add_option("--model", c.model, "Set model to sample from");
  l1->add_option("--input", c.input, "Point file instead of a model");
  l1->add_option("--points", c.points, "Sample size (default 100)");
  l1->add_option("--m", c.m, "Rows");
  l1->add_option("--matrix", c.matrix, "Use this HPM1 matrix instead of --m");
  l1->add_option("--trials", c.trials, "Mean-width trials for the Z bound");
  l1->add_option("--delta", c.delta, "Pass if the pair defect <= delta");

  auto* affine = app.add_subcommand("affine", "Affine tessellation of a bounded set by lifting");
  common(affine);
  affine->add_option("--input", c.input, "Point file");
  affine->add_option("--cloud", c.cloud, "Random Gaussian cloud of this many points");
  affine->add_option("--dim", c.dim, "Dimension of the random cloud");
  affine->add_option("--lift-t", c.lift_t, "Lift height t (lambda = pi t)");
  affine->add_option("--m", c.m, "Hyperplanes");
  affine->add_option("--delta", c.delta, "Pass if delta_max <= delta");
  affine->add_option("--out", c.out, "Write the HPA1 arrangement here");

  auto* jl = app.add_subcommand("jl", "One-bit dimension reduction of a finite set");
  common(jl);
  jl->add_option("--input", c.input, "Point file")->required();
  jl->add_option("--delta", c.delta, "Target distortion")->required();
  jl->add_option("--eta", c.eta, "Failure budget");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    Emitter emitter(c, args, out);
    if (*gen) return cmd_gen(c, emitter);
    if (*embed) return cmd_embed(c, emitter);
    if (*audit) return cmd_audit(c, emitter);
    if (*mw) return cmd_meanwidth(c, emitter);
    if (*cells) return cmd_cells(c, emitter);
    if (*graph) return cmd_graph(c, emitter);
    if (*l1) return cmd_l1(c, emitter);
    if (*affine) return cmd_affine(c, emitter);
    if (*jl) return cmd_jl(c, emitter);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  }
  return kUsage;
}

}  // namespace hypertess::cli

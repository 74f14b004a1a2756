#include "hypertess/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hypertess/error.hpp"

namespace hypertess {
namespace {

constexpr std::array<char, 4> kMatrixMagic{'H', 'P', 'M', '1'};
constexpr std::array<char, 4> kCodesMagic{'H', 'P', 'C', '1'};
constexpr std::array<char, 4> kArrangementMagic{'H', 'P', 'A', '1'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void magic(const std::array<char, 4>& m) { out_.write(m.data(), 4); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v), 8); }
  void check() {
    if (!out_) throw Error(ErrorKind::Io, "write failed");
  }

 private:
  void le(std::uint64_t v, int bytes) {
    char buf[8];
    for (int b = 0; b < bytes; ++b) buf[b] = static_cast<char>((v >> (8 * b)) & 0xFF);
    out_.write(buf, bytes);
  }
  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, const char* what) : in_(in), what_(what) {}

  void magic(const std::array<char, 4>& expected) {
    char buf[4];
    read(buf, 4);
    if (std::memcmp(buf, expected.data(), 4) != 0) {
      throw Error(ErrorKind::Format, std::string(what_) + ": bad magic");
    }
  }
  void version() {
    const std::uint32_t v = static_cast<std::uint32_t>(le(4));
    if (v != kFormatVersion) {
      throw Error(ErrorKind::Format, std::string(what_) + ": unsupported version " + std::to_string(v));
    }
  }
  std::uint64_t u64() { return le(8); }
  double f64() { return std::bit_cast<double>(le(8)); }

 private:
  void read(char* buf, std::size_t n) {
    in_.read(buf, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw Error(ErrorKind::Format, std::string(what_) + ": truncated file");
    }
  }
  std::uint64_t le(int bytes) {
    unsigned char buf[8];
    read(reinterpret_cast<char*>(buf), static_cast<std::size_t>(bytes));
    std::uint64_t v = 0;
    for (int b = 0; b < bytes; ++b) v |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
    return v;
  }
  std::istream& in_;
  const char* what_;
};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return in;
}

// Caps header-declared sizes so a corrupt header fails cleanly instead of
// attempting a giant allocation.
void check_size(std::uint64_t rows, std::uint64_t cols, const char* what) {
  constexpr std::uint64_t limit = std::uint64_t{1} << 34;
  if (rows > limit || cols > limit || (cols != 0 && rows > limit / cols)) {
    throw Error(ErrorKind::Format, std::string(what) + ": implausible size in header");
  }
}

}  // namespace

void write_matrix(std::ostream& out, const GaussianMatrix& a) {
  Writer w(out);
  w.magic(kMatrixMagic);
  w.u32(kFormatVersion);
  w.u64(a.rows());
  w.u64(a.cols());
  w.u64(a.seed().value);
  w.u64(a.seed().stream_id);
  for (double v : a.entries()) w.f64(v);
  w.check();
}

GaussianMatrix read_matrix(std::istream& in) {
  Reader r(in, "HPM1");
  r.magic(kMatrixMagic);
  r.version();
  const std::uint64_t m = r.u64();
  const std::uint64_t n = r.u64();
  Seed seed;
  seed.value = r.u64();
  seed.stream_id = r.u64();
  check_size(m, n, "HPM1");
  std::vector<double> entries(m * n);
  for (double& v : entries) v = r.f64();
  return GaussianMatrix(m, n, std::move(entries), seed);
}

void write_matrix(const std::filesystem::path& path, const GaussianMatrix& a) {
  auto out = open_out(path);
  write_matrix(out, a);
}

GaussianMatrix read_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix(in);
}

void write_codes(std::ostream& out, std::span<const BitCode> codes, std::size_t m) {
  Writer w(out);
  w.magic(kCodesMagic);
  w.u32(kFormatVersion);
  w.u64(codes.size());
  w.u64(m);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i].size() != m) {
      throw Error(ErrorKind::LengthMismatch, "code " + std::to_string(i) + " has " +
                                                 std::to_string(codes[i].size()) + " bits, expected " +
                                                 std::to_string(m));
    }
    for (std::uint64_t word : codes[i].words()) w.u64(word);
  }
  w.check();
}

CodeFile read_codes(std::istream& in) {
  Reader r(in, "HPC1");
  r.magic(kCodesMagic);
  r.version();
  const std::uint64_t count = r.u64();
  const std::uint64_t m = r.u64();
  const std::size_t words = BitCode::word_count(m);
  check_size(count, words, "HPC1");
  CodeFile file;
  file.m = m;
  file.codes.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::vector<std::uint64_t> buf(words);
    for (auto& word : buf) word = r.u64();
    file.codes.emplace_back(m, std::move(buf));
  }
  return file;
}

void write_codes(const std::filesystem::path& path, std::span<const BitCode> codes, std::size_t m) {
  auto out = open_out(path);
  write_codes(out, codes, m);
}

CodeFile read_codes(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_codes(in);
}

void write_arrangement(std::ostream& out, const AffineArrangement& arr) {
  Writer w(out);
  w.magic(kArrangementMagic);
  w.u32(kFormatVersion);
  w.u64(arr.m);
  w.u64(arr.n);
  w.f64(arr.lift_height);
  w.f64(arr.lambda);
  for (std::size_t i = 0; i < arr.m; ++i) {
    for (double v : arr.normal(i)) w.f64(v);
    w.f64(arr.offsets[i]);
  }
  w.check();
}

AffineArrangement read_arrangement(std::istream& in) {
  Reader r(in, "HPA1");
  r.magic(kArrangementMagic);
  r.version();
  AffineArrangement arr;
  arr.m = r.u64();
  arr.n = r.u64();
  arr.lift_height = r.f64();
  arr.lambda = r.f64();
  check_size(arr.m, arr.n, "HPA1");
  check_size(arr.m, arr.n + 1, "HPA1");
  arr.normals.resize(arr.m * arr.n);
  arr.offsets.resize(arr.m);
  for (std::size_t i = 0; i < arr.m; ++i) {
    for (std::size_t j = 0; j < arr.n; ++j) arr.normals[i * arr.n + j] = r.f64();
    arr.offsets[i] = r.f64();
  }
  return arr;
}

void write_arrangement(const std::filesystem::path& path, const AffineArrangement& arr) {
  auto out = open_out(path);
  write_arrangement(out, arr);
}

AffineArrangement read_arrangement(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_arrangement(in);
}

std::vector<Vector> parse_points_csv(std::istream& in) {
  std::vector<Vector> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    Vector row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      std::size_t b = pos;
      std::size_t e = end;
      while (b < e && (line[b] == ' ' || line[b] == '\t')) ++b;
      while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t' || line[e - 1] == '\r')) --e;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(line.data() + b, line.data() + e, v);
      if (ec != std::errc() || ptr != line.data() + e || b == e) {
        throw Error(ErrorKind::Format, "CSV line " + std::to_string(line_no) + ": bad number '" +
                                           line.substr(b, e - b) + "'");
      }
      row.push_back(v);
      pos = end + 1;
    }
    if (!points.empty() && row.size() != points.front().size()) {
      throw Error(ErrorKind::Format, "CSV line " + std::to_string(line_no) + " has " +
                                         std::to_string(row.size()) + " values, expected " +
                                         std::to_string(points.front().size()));
    }
    points.push_back(std::move(row));
  }
  return points;
}

std::vector<Vector> read_points(const std::filesystem::path& path) {
  auto in = open_in(path);
  char magic[4] = {};
  in.read(magic, 4);
  const bool binary = in.gcount() == 4 && std::memcmp(magic, kMatrixMagic.data(), 4) == 0;
  in.clear();
  in.seekg(0);
  if (!binary) return parse_points_csv(in);
  const GaussianMatrix rows = read_matrix(in);
  std::vector<Vector> points;
  points.reserve(rows.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    const auto r = rows.row(i);
    points.emplace_back(r.begin(), r.end());
  }
  return points;
}

void write_points_csv(std::ostream& out, std::span<const Vector> points) {
  char buf[32];
  for (const auto& p : points) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", p[j]);
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::Io, "write failed");
}

void write_points_csv(const std::filesystem::path& path, std::span<const Vector> points) {
  auto out = open_out(path);
  write_points_csv(out, points);
}

}  // namespace hypertess

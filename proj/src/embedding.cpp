#include "hypertess/embedding.hpp"

#include <bit>
#include <cstring>

#include "hypertess/error.hpp"
#include "hypertess/parallel.hpp"

namespace hypertess {

BitCode::BitCode(std::size_t m) : m_(m), words_(word_count(m), 0) {}

BitCode::BitCode(std::size_t m, std::vector<std::uint64_t> words,
                 std::optional<std::uint64_t> source_hash)
    : m_(m), words_(std::move(words)), source_hash_(source_hash) {
  if (words_.size() != word_count(m_)) {
    throw Error(ErrorKind::Format, "code of " + std::to_string(m_) + " bits needs " +
                                       std::to_string(word_count(m_)) + " words");
  }
  if (m_ % 64 != 0 && !words_.empty()) {
    const std::uint64_t mask = (std::uint64_t{1} << (m_ % 64)) - 1;
    if (words_.back() & ~mask) throw Error(ErrorKind::Format, "padding bits of code are not zero");
  }
}

BitCode BitCode::from_string(std::string_view bits) {
  BitCode code(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      code.set(i);
    } else if (bits[i] != '0') {
      throw Error(ErrorKind::Format, "bit strings may only contain '0' and '1'");
    }
  }
  return code;
}

BitCode BitCode::complement() const {
  BitCode out(m_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
  if (m_ % 64 != 0) out.words_.back() &= (std::uint64_t{1} << (m_ % 64)) - 1;
  return out;
}

std::string BitCode::to_string() const {
  std::string s(m_, '0');
  for (std::size_t i = 0; i < m_; ++i) {
    if (bit(i)) s[i] = '1';
  }
  return s;
}

std::string BitCode::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve((m_ + 3) / 4);
  for (std::size_t k = 0; 4 * k < m_; ++k) {
    const std::size_t w = (4 * k) >> 6;
    const unsigned nibble = static_cast<unsigned>((words_[w] >> ((4 * k) & 63)) & 0xF);
    s.push_back(kDigits[nibble]);
  }
  return s;
}

std::size_t BitCodeHash::operator()(const BitCode& c) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ c.size();
  for (std::uint64_t w : c.words()) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t matrix_checksum(const GaussianMatrix& a) { return a.checksum(); }

Vector project(const GaussianMatrix& a, std::span<const double> x) {
  require_same_dim(x.size(), a.cols(), "project");
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0) support.push_back(j);
  }
  Vector out(a.rows());
  // Zero terms never change a running sum that starts at +0.0, so visiting
  // only the support in column order reproduces the dense result exactly.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto row = a.row(i);
    double s = 0.0;
    for (std::size_t j : support) s += row[j] * x[j];
    out[i] = s;
  }
  return out;
}

BitCode sign_code(std::span<const double> projections) {
  BitCode code(projections.size());
  for (std::size_t i = 0; i < projections.size(); ++i) {
    if (projections[i] >= 0.0) code.set(i);
  }
  return code;
}

BitCode sign_embed(const GaussianMatrix& a, std::span<const double> x) {
  BitCode code = sign_code(project(a, x));
  code.set_source_hash(matrix_checksum(a));
  return code;
}

std::size_t hamming_count(const BitCode& c1, const BitCode& c2) {
  if (c1.size() != c2.size()) {
    throw Error(ErrorKind::LengthMismatch, "hamming: codes of " + std::to_string(c1.size()) +
                                               " and " + std::to_string(c2.size()) + " bits");
  }
  const auto w1 = c1.words();
  const auto w2 = c2.words();
  std::size_t count = 0;
  for (std::size_t w = 0; w < w1.size(); ++w) count += std::popcount(w1[w] ^ w2[w]);
  return count;
}

double hamming(const BitCode& c1, const BitCode& c2) {
  const std::size_t count = hamming_count(c1, c2);
  if (c1.size() == 0) return 0.0;
  return static_cast<double>(count) / static_cast<double>(c1.size());
}

double separation_fraction(const GaussianMatrix& a, std::span<const double> x,
                           std::span<const double> y) {
  require_same_dim(x.size(), y.size(), "separation_fraction");
  return hamming(sign_code(project(a, x)), sign_code(project(a, y)));
}

double soft_hamming_projected(std::span<const double> ax, std::span<const double> ay, double t) {
  require_same_dim(ax.size(), ay.size(), "soft_hamming");
  std::size_t count = 0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const double u = ax[i];
    const double v = ay[i];
    if ((u > t && v < -t) || (-u > t && -v < -t)) ++count;
  }
  if (ax.empty()) return 0.0;
  return static_cast<double>(count) / static_cast<double>(ax.size());
}

double soft_hamming(const GaussianMatrix& a, std::span<const double> x, std::span<const double> y,
                    SoftParams p) {
  require_same_dim(x.size(), y.size(), "soft_hamming");
  return soft_hamming_projected(project(a, x), project(a, y), p.t);
}

namespace {

template <typename Point>
std::vector<BitCode> batch_embed_impl(const GaussianMatrix& a, std::span<const Point> points,
                                      std::size_t threads) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != a.cols()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "batch_embed: point " + std::to_string(i) + " has dimension " +
                      std::to_string(points[i].size()) + ", matrix has " + std::to_string(a.cols()));
    }
  }
  const std::uint64_t checksum = matrix_checksum(a);
  std::vector<BitCode> codes(points.size());
  parallel_for(points.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      codes[i] = sign_code(project(a, points[i]));
      codes[i].set_source_hash(checksum);
    }
  });
  return codes;
}

}  // namespace

std::vector<BitCode> batch_embed(const GaussianMatrix& a, std::span<const Vector> points,
                                 std::size_t threads) {
  return batch_embed_impl(a, points, threads);
}

std::vector<BitCode> batch_embed(const GaussianMatrix& a, std::span<const UnitVector> points,
                                 std::size_t threads) {
  return batch_embed_impl(a, points, threads);
}

}  // namespace hypertess

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypertess/geometry.hpp"
#include "hypertess/random.hpp"

namespace hypertess {

/// Packed sign vector. Bit i lives in bit (i % 64) of word i / 64; bits past
/// m - 1 in the last word are always zero.
class BitCode {
 public:
  BitCode() = default;
  explicit BitCode(std::size_t m);
  /// Throws Format if `words` has the wrong length or dirty padding bits.
  BitCode(std::size_t m, std::vector<std::uint64_t> words,
          std::optional<std::uint64_t> source_hash = std::nullopt);
  /// Parses a string of '0'/'1' characters, bit 0 first.
  static BitCode from_string(std::string_view bits);

  std::size_t size() const noexcept { return m_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::optional<std::uint64_t> source_hash() const noexcept { return source_hash_; }
  void set_source_hash(std::optional<std::uint64_t> h) noexcept { source_hash_ = h; }

  bool bit(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  BitCode complement() const;

  std::string to_string() const;
  /// ceil(m/4) hex digits; digit k holds bits 4k..4k+3 with bit 4k least significant.
  std::string to_hex() const;

  static std::size_t word_count(std::size_t m) noexcept { return (m + 63) / 64; }

  // Equality is on the bits only; the provenance hash is metadata.
  friend bool operator==(const BitCode& a, const BitCode& b) noexcept {
    return a.m_ == b.m_ && a.words_ == b.words_;
  }
  friend bool operator<(const BitCode& a, const BitCode& b) noexcept {
    if (a.m_ != b.m_) return a.m_ < b.m_;
    return a.words_ < b.words_;
  }

 private:
  std::size_t m_ = 0;
  std::vector<std::uint64_t> words_;
  std::optional<std::uint64_t> source_hash_;
};

struct BitCodeHash {
  std::size_t operator()(const BitCode& c) const noexcept;
};

struct SoftParams {
  double t = 0.0;
};

/// FNV-1a over the shape and entry bytes of a matrix.
std::uint64_t matrix_checksum(const GaussianMatrix& a);

/// Ax, skipping zero coordinates of x (bit-identical to the dense sum).
Vector project(const GaussianMatrix& a, std::span<const double> x);

/// Bit i is set iff <a_i, x> >= 0; an exact zero counts as positive.
BitCode sign_embed(const GaussianMatrix& a, std::span<const double> x);
BitCode sign_code(std::span<const double> projections);

/// Fraction of differing bits, via XOR and popcount.
double hamming(const BitCode& c1, const BitCode& c2);
std::size_t hamming_count(const BitCode& c1, const BitCode& c2);

/// Fraction of rows whose hyperplane separates x and y.
double separation_fraction(const GaussianMatrix& a, std::span<const double> x,
                           std::span<const double> y);

/// Fraction of rows i with (<a_i,x> > t and <a_i,y> < -t) or (<a_i,x> < -t and <a_i,y> > t).
double soft_hamming(const GaussianMatrix& a, std::span<const double> x, std::span<const double> y,
                    SoftParams p);
/// Same count, starting from precomputed projections Ax and Ay.
double soft_hamming_projected(std::span<const double> ax, std::span<const double> ay, double t);

std::vector<BitCode> batch_embed(const GaussianMatrix& a, std::span<const Vector> points,
                                 std::size_t threads = 1);
std::vector<BitCode> batch_embed(const GaussianMatrix& a, std::span<const UnitVector> points,
                                 std::size_t threads = 1);

}  // namespace hypertess

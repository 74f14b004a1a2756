#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hypertess {

struct Seed {
  std::uint64_t value = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

// Fixed stream ids used by the command-line runs.
namespace streams {
inline constexpr std::uint64_t kMatrix = 0;
inline constexpr std::uint64_t kSampling = 1;
inline constexpr std::uint64_t kPairSelection = 2;
}  // namespace streams

/// Counter-based generator keyed on (seed.value, seed.stream_id, lane).
///
/// Output k is splitmix64's finalizer applied to key + (k + 1) * golden, so any
/// lane can be produced independently of the others. Gaussians come from the
/// Box-Muller transform on pairs of 53-bit uniforms; the second value of each
/// pair is cached. Changing either of these breaks regeneration of stored
/// experiments, so both are part of the file-format contract for a release.
class RandomStream {
 public:
  explicit RandomStream(Seed seed, std::uint64_t lane = 0);

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  /// Unbiased integer in [0, bound); bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);
  double gaussian();
  void fill_gaussian(std::span<double> out);

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

class GaussianMatrix {
 public:
  /// Wraps explicit entries (deserialized or hand-built arrangements).
  GaussianMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries, Seed seed = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Seed& seed() const noexcept { return seed_; }
  std::span<const double> entries() const noexcept { return entries_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * cols_, cols_};
  }
  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }
  /// FNV-1a of shape and entries, computed once at construction.
  std::uint64_t checksum() const noexcept { return checksum_; }

  friend bool operator==(const GaussianMatrix&, const GaussianMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
  Seed seed_;
  std::uint64_t checksum_ = 0;
};

/// m x n matrix of i.i.d. N(0,1) entries, row-major, drawn from lane 0 of `seed`.
GaussianMatrix gaussian_matrix(Seed seed, std::size_t m, std::size_t n);

/// Length-n i.i.d. N(0,1) vector from lane `lane` of `seed`.
std::vector<double> gaussian_vector(Seed seed, std::size_t n, std::uint64_t lane = 0);

}  // namespace hypertess

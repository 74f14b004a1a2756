#include "hypertess/random.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "hypertess/error.hpp"

namespace hypertess {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(Seed seed, std::uint64_t lane) {
  std::uint64_t key = mix64(seed.value + kGolden);
  key = mix64(key ^ mix64(seed.stream_id + 0x632BE59BD9B4E019ULL));
  key = mix64(key ^ mix64(lane + 0x8CB92BA72F3D8DD7ULL));
  return key;
}

}  // namespace

RandomStream::RandomStream(Seed seed, std::uint64_t lane) : state_(derive_key(seed, lane)) {}

std::uint64_t RandomStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RandomStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t RandomStream::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::InvalidArgument, "uniform_index bound must be positive");
  // Rejection on the top of the range keeps every residue equally likely.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t x = next_u64();
  while (x > limit) x = next_u64();
  return x % bound;
}

double RandomStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

void RandomStream::fill_gaussian(std::span<double> out) {
  for (double& v : out) v = gaussian();
}

GaussianMatrix::GaussianMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries,
                               Seed seed)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), seed_(seed) {
  if (rows_ == 0 || cols_ == 0) {
    throw Error(ErrorKind::InvalidDimension, "matrix must have at least one row and column");
  }
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorKind::LengthMismatch, "matrix expects " + std::to_string(rows_ * cols_) +
                                               " entries, got " + std::to_string(entries_.size()));
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "matrix entries must be finite");
  }
  // FNV-1a over the shape and the raw entry bits.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  };
  feed(rows_);
  feed(cols_);
  for (double v : entries_) feed(std::bit_cast<std::uint64_t>(v));
  checksum_ = h;
}

GaussianMatrix gaussian_matrix(Seed seed, std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) {
    throw Error(ErrorKind::InvalidDimension, "gaussian_matrix requires m >= 1 and n >= 1");
  }
  std::vector<double> entries(m * n);
  RandomStream stream(seed);
  stream.fill_gaussian(entries);
  return GaussianMatrix(m, n, std::move(entries), seed);
}

std::vector<double> gaussian_vector(Seed seed, std::size_t n, std::uint64_t lane) {
  if (n == 0) throw Error(ErrorKind::InvalidDimension, "gaussian_vector requires n >= 1");
  std::vector<double> v(n);
  RandomStream stream(seed, lane);
  stream.fill_gaussian(v);
  return v;
}

}  // namespace hypertess

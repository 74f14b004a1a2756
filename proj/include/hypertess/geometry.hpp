#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hypertess {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// A point of the unit sphere S^{n-1}.
///
/// Inputs whose norm is within kTolerance of 1 are kept bit-for-bit; anything
/// further off is rescaled and remembers that it was, so audit reports can flag
/// sloppy inputs instead of silently absorbing them.
class UnitVector {
 public:
  static constexpr double kTolerance = 1e-9;

  explicit UnitVector(Vector coords);

  std::span<const double> coords() const noexcept { return coords_; }
  const Vector& vector() const noexcept { return coords_; }
  operator std::span<const double>() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  bool renormalized() const noexcept { return renormalized_; }

  UnitVector operator-() const;

  friend bool operator==(const UnitVector& a, const UnitVector& b) { return a.coords_ == b.coords_; }

 private:
  Vector coords_;
  bool renormalized_ = false;
};

/// Normalized geodesic distance on the sphere: angle / pi, so antipodes are at 1.
double geodesic(const UnitVector& x, const UnitVector& y);
double euclidean(std::span<const double> x, std::span<const double> y);

/// u / ||u||_2.
UnitVector spherical_project(std::span<const double> u);

struct EpsilonNet {
  double epsilon = 0.0;
  std::vector<UnitVector> centers;
  /// Input index of each center.
  std::vector<std::size_t> center_indices;
  /// Input point index -> index into `centers` of its nearest center.
  std::vector<std::size_t> assignment;
};

/// Greedy cover in input order: a point becomes a center iff it is farther
/// than epsilon (Euclidean) from every center admitted before it.
EpsilonNet build_epsilon_net(std::span<const UnitVector> points, double epsilon);

struct Decomposition {
  std::size_t center_index = 0;
  UnitVector center;
  Vector tail;
};

/// Splits x into its nearest net center and the remainder x - center.
Decomposition decompose(const UnitVector& x, const EpsilonNet& net);

}  // namespace hypertess

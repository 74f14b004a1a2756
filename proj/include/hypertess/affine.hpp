#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hypertess/audit.hpp"
#include "hypertess/embedding.hpp"
#include "hypertess/geometry.hpp"
#include "hypertess/random.hpp"

namespace hypertess {

/// m affine hyperplanes <a_i, x> + b_i = 0 in R^n, obtained by lifting K to
/// S^n at height t. Distances are recovered as lambda * (separated fraction).
struct AffineArrangement {
  std::size_t m = 0;
  std::size_t n = 0;
  /// m x n, row-major.
  std::vector<double> normals;
  std::vector<double> offsets;
  double lift_height = 0.0;
  double lambda = 0.0;
  Vector base_point;
  Seed seed;

  std::span<const double> normal(std::size_t i) const { return {normals.data() + i * n, n}; }

  friend bool operator==(const AffineArrangement&, const AffineArrangement&) = default;
};

struct NormalizedPoints {
  std::vector<Vector> points;
  double scale = 1.0;
  /// The original first point, subtracted from every input.
  Vector base_point;
};

/// Translates the first point to the origin and rescales to diameter 1.
NormalizedPoints normalize_diameter(std::span<const Vector> points);

/// Largest pairwise Euclidean distance (brute force).
double diameter(std::span<const Vector> points);

/// Q(x (+) t): the point (x, t) pushed onto S^n.
UnitVector lift_point(std::span<const double> x, double t);

/// Draws G = gaussian_matrix(seed, m, n + 1); row i gives normal G_i[0..n)
/// and offset G_i[n] * t. Points must already have diameter ~1.
AffineArrangement build_affine_arrangement(std::span<const Vector> points, double t, std::size_t m,
                                           Seed seed);

/// The (n+1)-column matrix an arrangement was drawn from.
GaussianMatrix generating_matrix(const AffineArrangement& arr);

BitCode affine_code(const AffineArrangement& arr, std::span<const double> x);

double affine_separation_fraction(const AffineArrangement& arr, std::span<const double> x,
                                  std::span<const double> y);

/// delta_max = max |lambda d_A(x,y) - ||x - y||_2| over the given index pairs.
AuditReport audit_affine(const AffineArrangement& arr, std::span<const Vector> points,
                         std::span<const IndexPair> pairs, std::optional<double> bound = std::nullopt,
                         std::size_t threads = 1);
AuditReport audit_affine(const AffineArrangement& arr,
                         std::span<const std::pair<Vector, Vector>> pairs,
                         std::optional<double> bound = std::nullopt, std::size_t threads = 1);

/// max over pairs of t^2 |pi d(lift x, lift y) - ||x - y|| / t|: the empirical
/// constant in the geodesic-vs-Euclidean control after lifting.
double lift_distortion_constant(std::span<const Vector> points, std::span<const IndexPair> pairs,
                                double t);

}  // namespace hypertess

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypertess/embedding.hpp"
#include "hypertess/geometry.hpp"
#include "hypertess/random.hpp"

namespace hypertess {

struct IndexPair {
  std::size_t i = 0;
  std::size_t j = 0;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// One audited pair. `d_geo` is the reference distance the tessellation should
/// reproduce: normalized geodesic on the sphere, Euclidean for affine audits.
struct PairSample {
  std::size_t i = 0;
  std::size_t j = 0;
  Vector x;
  Vector y;
  double d_geo = 0.0;
  double d_ham = 0.0;
  std::optional<double> d_soft;
  double error = 0.0;
};

struct AuditReport {
  std::string kind = "uniformity";
  std::size_t m = 0;
  std::size_t n = 0;
  Seed seed;
  double t = 0.0;
  std::size_t pairs_evaluated = 0;
  double delta_max = 0.0;
  double mean_abs_error = 0.0;
  std::vector<PairSample> worst_pairs;
  std::optional<double> theorem_bound;
  bool passed = false;
  std::size_t renormalized_inputs = 0;
  std::optional<double> lambda;
};

inline constexpr std::size_t kWorstPairsCap = 32;
inline constexpr std::size_t kAllPairsLimit = 1000;

/// Target for a soft audit: delta + 2|t|.
double soft_bound(double delta, double t);

std::vector<IndexPair> all_pairs(std::size_t count);

/// All pairs when there are at most kAllPairsLimit points; otherwise
/// `sample_count` seeded uniform pairs plus every nearest-neighbour pair.
/// The result is sorted and free of duplicates.
std::vector<IndexPair> select_pairs(std::span<const UnitVector> points, std::size_t sample_count,
                                    Seed seed);

/// Compares d_A^t with the geodesic distance on every pair. At t = 0 the hard
/// distance from sign codes is used.
AuditReport audit_uniformity(const GaussianMatrix& a, std::span<const UnitVector> points,
                             std::span<const IndexPair> pairs, double t,
                             std::optional<double> bound = std::nullopt, std::size_t threads = 1);
AuditReport audit_uniformity(const GaussianMatrix& a,
                             std::span<const std::pair<UnitVector, UnitVector>> pairs, double t,
                             std::optional<double> bound = std::nullopt, std::size_t threads = 1);
/// Hard audit reproduced from stored codes alone.
AuditReport audit_uniformity_codes(std::span<const BitCode> codes,
                                   std::span<const UnitVector> points,
                                   std::span<const IndexPair> pairs,
                                   std::optional<double> bound = std::nullopt, std::size_t threads = 1);

struct CellReport {
  std::size_t cell_count = 0;
  /// (cell size, number of cells of that size), ascending by size.
  std::vector<std::pair<std::size_t, std::size_t>> occupancy;
  double max_cell_diameter_geodesic = 0.0;
  double max_cell_diameter_euclidean = 0.0;
  /// Cell attaining the largest Euclidean diameter.
  std::optional<BitCode> offending_code;
  std::size_t largest_cell = 0;
};

/// Groups points by identical code and measures each group's diameter.
CellReport cell_analysis(std::span<const BitCode> codes, std::span<const UnitVector> points);

struct L1Stat {
  /// max_x |(1/m)||Ax||_1 - sqrt(2/pi)||x||_2|
  double z = 0.0;
  /// max_{x,y} |(1/m)sqrt(pi/2)||Ax - Ay||_1 - ||x - y||_2|
  double pair_defect = 0.0;
};

L1Stat l1_embedding_stat(const GaussianMatrix& a, std::span<const Vector> points,
                         std::size_t threads = 1);

/// max over tails x' of (1/m) sum_i |<a_i, x'>|.
double tail_stat(const GaussianMatrix& a, std::span<const Vector> tails);

/// Checks d^{t+M eps}(x,y) - 2/M <= d^t(x+x', y+y') <= d^{t-M eps}(x,y) + 2/M.
/// Throws Precondition unless ||Ax'||_1 <= eps m, ||Ay'||_1 <= eps m and M >= 1.
bool l1_continuity_check(const GaussianMatrix& a, std::span<const double> x,
                         std::span<const double> y, std::span<const double> x_shift,
                         std::span<const double> y_shift, double t, double epsilon, double big_m);

struct MidpointDiagnostic {
  bool same_cell = false;
  double midpoint_norm = 0.0;
  /// max_i ||<a_i,z>| - (|<a_i,x>| + |<a_i,y>|)/2|, only for same-cell pairs.
  std::optional<double> l1_identity_gap;
};

MidpointDiagnostic midpoint_diagnostic(const GaussianMatrix& a, const UnitVector& x,
                                       const UnitVector& y);

}  // namespace hypertess

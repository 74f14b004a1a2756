#include "hypertess/affine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hypertess/error.hpp"
#include "hypertess/parallel.hpp"

namespace hypertess {

double diameter(std::span<const Vector> points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, euclidean(points[i], points[j]));
  }
  return d;
}

NormalizedPoints normalize_diameter(std::span<const Vector> points) {
  if (points.size() < 2) throw Error(ErrorKind::DegenerateInput, "need at least two points");
  const std::size_t n = points.front().size();
  for (const auto& p : points) require_same_dim(p.size(), n, "normalize_diameter");

  NormalizedPoints out;
  out.base_point = points.front();
  out.points.reserve(points.size());
  for (const auto& p : points) {
    Vector q(n);
    for (std::size_t j = 0; j < n; ++j) q[j] = p[j] - out.base_point[j];
    out.points.push_back(std::move(q));
  }
  const double d = diameter(out.points);
  if (!(d > 0.0)) throw Error(ErrorKind::DegenerateInput, "all points coincide; diameter is zero");
  out.scale = 1.0 / d;
  if (out.scale != 1.0) {
    for (auto& q : out.points) {
      for (double& v : q) v *= out.scale;
    }
  }
  return out;
}

UnitVector lift_point(std::span<const double> x, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "lift height must be positive");
  Vector up(x.begin(), x.end());
  up.push_back(t);
  return spherical_project(up);
}

AffineArrangement build_affine_arrangement(std::span<const Vector> points, double t, std::size_t m,
                                           Seed seed) {
  if (points.empty()) throw Error(ErrorKind::EmptyInput, "affine arrangement needs points");
  if (!(t >= 2.0)) throw Error(ErrorKind::InvalidArgument, "lift height t must be at least 2");
  const double d = diameter(points);
  if (d < 0.99 || d > 1.01) {
    throw Error(ErrorKind::NormalizationRequired,
                "point set has diameter " + std::to_string(d) + "; run normalize_diameter first");
  }
  const std::size_t n = points.front().size();
  const GaussianMatrix g = gaussian_matrix(seed, m, n + 1);

  AffineArrangement arr;
  arr.m = m;
  arr.n = n;
  arr.lift_height = t;
  arr.lambda = std::numbers::pi * t;
  arr.base_point = points.front();
  arr.seed = seed;
  arr.normals.reserve(m * n);
  arr.offsets.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = g.row(i);
    arr.normals.insert(arr.normals.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
    arr.offsets.push_back(row[n] * t);
  }
  return arr;
}

GaussianMatrix generating_matrix(const AffineArrangement& arr) {
  return gaussian_matrix(arr.seed, arr.m, arr.n + 1);
}

BitCode affine_code(const AffineArrangement& arr, std::span<const double> x) {
  require_same_dim(x.size(), arr.n, "affine_code");
  BitCode code(arr.m);
  for (std::size_t i = 0; i < arr.m; ++i) {
    const auto a = arr.normal(i);
    double s = 0.0;
    for (std::size_t j = 0; j < arr.n; ++j) s += a[j] * x[j];
    if (s + arr.offsets[i] >= 0.0) code.set(i);
  }
  return code;
}

double affine_separation_fraction(const AffineArrangement& arr, std::span<const double> x,
                                  std::span<const double> y) {
  return hamming(affine_code(arr, x), affine_code(arr, y));
}

AuditReport audit_affine(const AffineArrangement& arr, std::span<const Vector> points,
                         std::span<const IndexPair> pairs, std::optional<double> bound,
                         std::size_t threads) {
  if (pairs.empty()) throw Error(ErrorKind::EmptyInput, "audit needs at least one pair");
  for (const auto& p : points) require_same_dim(p.size(), arr.n, "audit_affine");
  for (const auto& p : pairs) {
    if (p.i >= points.size() || p.j >= points.size()) {
      throw Error(ErrorKind::InvalidArgument, "pair index out of range");
    }
  }

  std::vector<BitCode> codes(points.size());
  parallel_for(points.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) codes[i] = affine_code(arr, points[i]);
  });
  std::vector<double> euclid(pairs.size()), frac(pairs.size()), errors(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const auto [i, j] = pairs[k];
      euclid[k] = euclidean(points[i], points[j]);
      frac[k] = hamming(codes[i], codes[j]);
      errors[k] = std::abs(arr.lambda * frac[k] - euclid[k]);
    }
  });

  AuditReport report;
  report.kind = "affine";
  report.m = arr.m;
  report.n = arr.n;
  report.seed = arr.seed;
  report.lambda = arr.lambda;
  report.theorem_bound = bound;
  report.pairs_evaluated = pairs.size();
  double sum = 0.0;
  for (double e : errors) {
    sum += e;
    report.delta_max = std::max(report.delta_max, e);
  }
  report.mean_abs_error = sum / static_cast<double>(errors.size());

  std::vector<std::size_t> order(errors.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t keep = std::min(kWorstPairsCap, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (errors[a] != errors[b]) return errors[a] > errors[b];
                      return a < b;
                    });
  for (std::size_t r = 0; r < keep; ++r) {
    const std::size_t k = order[r];
    PairSample s;
    s.i = pairs[k].i;
    s.j = pairs[k].j;
    s.x = points[s.i];
    s.y = points[s.j];
    s.d_geo = euclid[k];
    s.d_ham = frac[k];
    s.error = errors[k];
    report.worst_pairs.push_back(std::move(s));
  }
  if (bound) report.passed = report.delta_max <= *bound;
  return report;
}

AuditReport audit_affine(const AffineArrangement& arr,
                         std::span<const std::pair<Vector, Vector>> pairs,
                         std::optional<double> bound, std::size_t threads) {
  if (pairs.empty()) throw Error(ErrorKind::EmptyInput, "audit needs at least one pair");
  std::vector<Vector> points;
  std::vector<IndexPair> index;
  for (const auto& [x, y] : pairs) {
    index.push_back({points.size(), points.size() + 1});
    points.push_back(x);
    points.push_back(y);
  }
  return audit_affine(arr, points, index, bound, threads);
}

double lift_distortion_constant(std::span<const Vector> points, std::span<const IndexPair> pairs,
                                double t) {
  std::vector<UnitVector> lifted;
  lifted.reserve(points.size());
  for (const auto& p : points) lifted.push_back(lift_point(p, t));
  double worst = 0.0;
  for (const auto& [i, j] : pairs) {
    const double gap = std::abs(std::numbers::pi * geodesic(lifted[i], lifted[j]) -
                                euclidean(points[i], points[j]) / t);
    worst = std::max(worst, gap * t * t);
  }
  return worst;
}

}  // namespace hypertess

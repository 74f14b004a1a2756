#include "hypertess/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#include "hypertess/error.hpp"
#include "hypertess/parallel.hpp"

namespace hypertess {
namespace {

void check_pairs(std::span<const IndexPair> pairs, std::size_t count) {
  if (pairs.empty()) throw Error(ErrorKind::EmptyInput, "audit needs at least one pair");
  for (const auto& p : pairs) {
    if (p.i >= count || p.j >= count) {
      throw Error(ErrorKind::InvalidArgument, "pair index out of range");
    }
  }
}

// Shared aggregation: errors[k] belongs to pairs[k]; reductions run in index
// order so the report is identical for any thread count.
void summarize(AuditReport& report, std::span<const IndexPair> pairs,
               const std::vector<double>& errors, auto&& make_sample) {
  report.pairs_evaluated = pairs.size();
  double sum = 0.0;
  double worst = 0.0;
  for (double e : errors) {
    sum += e;
    worst = std::max(worst, e);
  }
  report.delta_max = worst;
  report.mean_abs_error = sum / static_cast<double>(errors.size());

  std::vector<std::size_t> order(errors.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t keep = std::min(kWorstPairsCap, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (errors[a] != errors[b]) return errors[a] > errors[b];
                      return a < b;
                    });
  report.worst_pairs.clear();
  for (std::size_t k = 0; k < keep; ++k) report.worst_pairs.push_back(make_sample(order[k]));

  if (report.theorem_bound) report.passed = report.delta_max <= *report.theorem_bound;
}

std::size_t count_renormalized(std::span<const UnitVector> points) {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const UnitVector& p) { return p.renormalized(); }));
}

}  // namespace

double soft_bound(double delta, double t) { return delta + 2.0 * std::abs(t); }

std::vector<IndexPair> all_pairs(std::size_t count) {
  std::vector<IndexPair> pairs;
  if (count >= 2) pairs.reserve(count * (count - 1) / 2);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

std::vector<IndexPair> select_pairs(std::span<const UnitVector> points, std::size_t sample_count,
                                    Seed seed) {
  const std::size_t count = points.size();
  if (count <= kAllPairsLimit) return all_pairs(count);

  std::vector<IndexPair> pairs;
  pairs.reserve(sample_count + count);
  RandomStream stream(seed);
  for (std::size_t k = 0; k < sample_count; ++k) {
    const std::size_t i = stream.uniform_index(count);
    std::size_t j = stream.uniform_index(count - 1);
    if (j >= i) ++j;
    pairs.push_back({std::min(i, j), std::max(i, j)});
  }
  // Near pairs are where a sign map is least continuous; always include them.
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t nearest = i == 0 ? 1 : 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < count; ++j) {
      if (j == i) continue;
      const double d = euclidean(points[i].coords(), points[j].coords());
      if (d < best) {
        best = d;
        nearest = j;
      }
    }
    pairs.push_back({std::min(i, nearest), std::max(i, nearest)});
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

AuditReport audit_uniformity(const GaussianMatrix& a, std::span<const UnitVector> points,
                             std::span<const IndexPair> pairs, double t,
                             std::optional<double> bound, std::size_t threads) {
  check_pairs(pairs, points.size());
  for (const auto& p : points) require_same_dim(p.size(), a.cols(), "audit_uniformity");
  if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "soft threshold must be finite");

  AuditReport report;
  report.m = a.rows();
  report.n = a.cols();
  report.seed = a.seed();
  report.t = t;
  report.theorem_bound = bound;
  report.renormalized_inputs = count_renormalized(points);

  std::vector<double> geo(pairs.size()), measured(pairs.size()), errors(pairs.size());
  if (t == 0.0) {
    const auto codes = batch_embed(a, points, threads);
    parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        const auto [i, j] = pairs[k];
        geo[k] = geodesic(points[i], points[j]);
        measured[k] = hamming(codes[i], codes[j]);
        errors[k] = std::abs(measured[k] - geo[k]);
      }
    });
  } else {
    std::vector<Vector> proj(points.size());
    parallel_for(points.size(), threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) proj[i] = project(a, points[i]);
    });
    parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        const auto [i, j] = pairs[k];
        geo[k] = geodesic(points[i], points[j]);
        measured[k] = soft_hamming_projected(proj[i], proj[j], t);
        errors[k] = std::abs(measured[k] - geo[k]);
      }
    });
  }

  summarize(report, pairs, errors, [&](std::size_t k) {
    PairSample s;
    s.i = pairs[k].i;
    s.j = pairs[k].j;
    s.x = points[s.i].vector();
    s.y = points[s.j].vector();
    s.d_geo = geo[k];
    if (t == 0.0) {
      s.d_ham = measured[k];
    } else {
      s.d_soft = measured[k];
      s.d_ham = separation_fraction(a, s.x, s.y);
    }
    s.error = errors[k];
    return s;
  });
  return report;
}

AuditReport audit_uniformity(const GaussianMatrix& a,
                             std::span<const std::pair<UnitVector, UnitVector>> pairs, double t,
                             std::optional<double> bound, std::size_t threads) {
  if (pairs.empty()) throw Error(ErrorKind::EmptyInput, "audit needs at least one pair");
  std::vector<UnitVector> points;
  std::vector<IndexPair> index;
  points.reserve(2 * pairs.size());
  for (const auto& [x, y] : pairs) {
    index.push_back({points.size(), points.size() + 1});
    points.push_back(x);
    points.push_back(y);
  }
  return audit_uniformity(a, points, index, t, bound, threads);
}

AuditReport audit_uniformity_codes(std::span<const BitCode> codes,
                                   std::span<const UnitVector> points,
                                   std::span<const IndexPair> pairs, std::optional<double> bound,
                                   std::size_t threads) {
  if (codes.size() != points.size()) {
    throw Error(ErrorKind::LengthMismatch, "codes and points differ in count");
  }
  check_pairs(pairs, points.size());

  AuditReport report;
  report.m = codes.front().size();
  report.n = points.front().size();
  report.theorem_bound = bound;
  report.renormalized_inputs = count_renormalized(points);

  std::vector<double> geo(pairs.size()), measured(pairs.size()), errors(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const auto [i, j] = pairs[k];
      geo[k] = geodesic(points[i], points[j]);
      measured[k] = hamming(codes[i], codes[j]);
      errors[k] = std::abs(measured[k] - geo[k]);
    }
  });
  summarize(report, pairs, errors, [&](std::size_t k) {
    PairSample s;
    s.i = pairs[k].i;
    s.j = pairs[k].j;
    s.x = points[s.i].vector();
    s.y = points[s.j].vector();
    s.d_geo = geo[k];
    s.d_ham = measured[k];
    s.error = errors[k];
    return s;
  });
  return report;
}

CellReport cell_analysis(std::span<const BitCode> codes, std::span<const UnitVector> points) {
  if (codes.size() != points.size()) {
    throw Error(ErrorKind::LengthMismatch, "cell_analysis: " + std::to_string(codes.size()) +
                                               " codes for " + std::to_string(points.size()) +
                                               " points");
  }
  CellReport report;
  if (codes.empty()) return report;

  std::vector<std::size_t> order(codes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return codes[a] < codes[b]; });

  std::map<std::size_t, std::size_t> occupancy;
  double worst_euclid = -1.0;
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin + 1;
    while (end < order.size() && codes[order[end]] == codes[order[begin]]) ++end;

    double geo = 0.0;
    double euc = 0.0;
    for (std::size_t p = begin; p < end; ++p) {
      for (std::size_t q = p + 1; q < end; ++q) {
        const auto& x = points[order[p]];
        const auto& y = points[order[q]];
        geo = std::max(geo, geodesic(x, y));
        euc = std::max(euc, euclidean(x.coords(), y.coords()));
      }
    }
    ++report.cell_count;
    ++occupancy[end - begin];
    report.largest_cell = std::max(report.largest_cell, end - begin);
    report.max_cell_diameter_geodesic = std::max(report.max_cell_diameter_geodesic, geo);
    if (euc > worst_euclid) {
      worst_euclid = euc;
      report.max_cell_diameter_euclidean = euc;
      report.offending_code = codes[order[begin]];
    }
    begin = end;
  }
  report.occupancy.assign(occupancy.begin(), occupancy.end());
  return report;
}

L1Stat l1_embedding_stat(const GaussianMatrix& a, std::span<const Vector> points,
                         std::size_t threads) {
  if (points.empty()) throw Error(ErrorKind::EmptyInput, "l1_embedding_stat needs points");
  for (const auto& p : points) require_same_dim(p.size(), a.cols(), "l1_embedding_stat");

  const double m = static_cast<double>(a.rows());
  const double sqrt_2_over_pi = std::sqrt(2.0 / std::numbers::pi);
  const double sqrt_pi_over_2 = std::sqrt(std::numbers::pi / 2.0);

  std::vector<Vector> proj(points.size());
  std::vector<double> z_terms(points.size());
  parallel_for(points.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      proj[i] = project(a, points[i]);
      double l1 = 0.0;
      for (double v : proj[i]) l1 += std::abs(v);
      z_terms[i] = std::abs(l1 / m - sqrt_2_over_pi * norm(points[i]));
    }
  });

  // Row i of the pair triangle holds max_j>i of the defect.
  std::vector<double> row_defect(points.size(), 0.0);
  parallel_for(points.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        double l1 = 0.0;
        for (std::size_t r = 0; r < proj[i].size(); ++r) l1 += std::abs(proj[i][r] - proj[j][r]);
        const double defect = std::abs(sqrt_pi_over_2 * l1 / m - euclidean(points[i], points[j]));
        row_defect[i] = std::max(row_defect[i], defect);
      }
    }
  });

  L1Stat stat;
  for (double z : z_terms) stat.z = std::max(stat.z, z);
  for (double d : row_defect) stat.pair_defect = std::max(stat.pair_defect, d);
  return stat;
}

double tail_stat(const GaussianMatrix& a, std::span<const Vector> tails) {
  double worst = 0.0;
  for (const auto& tail : tails) {
    require_same_dim(tail.size(), a.cols(), "tail_stat");
    double l1 = 0.0;
    for (double v : project(a, tail)) l1 += std::abs(v);
    worst = std::max(worst, l1 / static_cast<double>(a.rows()));
  }
  return worst;
}

bool l1_continuity_check(const GaussianMatrix& a, std::span<const double> x,
                         std::span<const double> y, std::span<const double> x_shift,
                         std::span<const double> y_shift, double t, double epsilon, double big_m) {
  for (auto v : {x.size(), y.size(), x_shift.size(), y_shift.size()}) {
    require_same_dim(v, a.cols(), "l1_continuity_check");
  }
  if (!(big_m >= 1.0)) throw Error(ErrorKind::Precondition, "M must be at least 1");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::Precondition, "epsilon must be positive");

  const double m = static_cast<double>(a.rows());
  auto l1_of = [&](std::span<const double> v) {
    double s = 0.0;
    for (double p : project(a, v)) s += std::abs(p);
    return s;
  };
  if (l1_of(x_shift) > epsilon * m || l1_of(y_shift) > epsilon * m) {
    throw Error(ErrorKind::Precondition, "perturbations violate ||Ax'||_1 <= eps m");
  }

  Vector xs(x.begin(), x.end());
  Vector ys(y.begin(), y.end());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    xs[j] += x_shift[j];
    ys[j] += y_shift[j];
  }
  const Vector ax = project(a, x);
  const Vector ay = project(a, y);
  const double shifted = soft_hamming_projected(project(a, xs), project(a, ys), t);
  const double slack = 2.0 / big_m;
  const double lower = soft_hamming_projected(ax, ay, t + big_m * epsilon) - slack;
  const double upper = soft_hamming_projected(ax, ay, t - big_m * epsilon) + slack;
  return lower <= shifted && shifted <= upper;
}

MidpointDiagnostic midpoint_diagnostic(const GaussianMatrix& a, const UnitVector& x,
                                       const UnitVector& y) {
  require_same_dim(x.size(), y.size(), "midpoint_diagnostic");
  const Vector ax = project(a, x);
  const Vector ay = project(a, y);
  Vector z(x.size());
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = 0.5 * (x[j] + y[j]);

  MidpointDiagnostic diag;
  diag.same_cell = sign_code(ax) == sign_code(ay);
  diag.midpoint_norm = norm(z);
  if (diag.same_cell) {
    const Vector az = project(a, z);
    double gap = 0.0;
    for (std::size_t i = 0; i < az.size(); ++i) {
      gap = std::max(gap, std::abs(std::abs(az[i]) - 0.5 * (std::abs(ax[i]) + std::abs(ay[i]))));
    }
    diag.l1_identity_gap = gap;
  }
  return diag;
}

}  // namespace hypertess

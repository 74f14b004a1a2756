#include "hypertess/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypertess/error.hpp"

namespace hypertess {

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

UnitVector::UnitVector(Vector coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorKind::InvalidDimension, "unit vector needs n >= 1");
  const double r = norm(coords_);
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::DegenerateInput, "cannot place a zero or non-finite vector on the sphere");
  }
  if (std::abs(r - 1.0) > kTolerance) {
    for (double& v : coords_) v /= r;
    renormalized_ = true;
  }
}

UnitVector UnitVector::operator-() const {
  UnitVector out = *this;
  for (double& v : out.coords_) v = -v;
  return out;
}

double geodesic(const UnitVector& x, const UnitVector& y) {
  require_same_dim(x.size(), y.size(), "geodesic");
  // angle = 2 atan2(|x - y|, |x + y|): exact at 0 and pi, unlike acos near +-1.
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    const double s = x[i] + y[i];
    diff += d * d;
    sum += s * s;
  }
  const double angle = 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
  return std::min(1.0, angle / std::numbers::pi);
}

double euclidean(std::span<const double> x, std::span<const double> y) {
  require_same_dim(x.size(), y.size(), "euclidean");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

UnitVector spherical_project(std::span<const double> u) {
  const double r = norm(u);
  if (!(r > 0.0)) throw Error(ErrorKind::DegenerateInput, "spherical projection of the zero vector");
  Vector out(u.begin(), u.end());
  for (double& v : out) v /= r;
  return UnitVector(std::move(out));
}

EpsilonNet build_epsilon_net(std::span<const UnitVector> points, double epsilon) {
  if (points.empty()) throw Error(ErrorKind::EmptyInput, "epsilon net of an empty point set");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const std::size_t n = points.front().size();

  EpsilonNet net;
  net.epsilon = epsilon;
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_same_dim(points[i].size(), n, "build_epsilon_net");
    bool covered = false;
    for (const auto& c : net.centers) {
      if (euclidean(points[i].coords(), c.coords()) <= epsilon) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      net.centers.push_back(points[i]);
      net.center_indices.push_back(i);
    }
  }

  net.assignment.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < net.centers.size(); ++c) {
      const double d = euclidean(points[i].coords(), net.centers[c].coords());
      if (d < best) {
        best = d;
        net.assignment[i] = c;
      }
    }
  }
  return net;
}

Decomposition decompose(const UnitVector& x, const EpsilonNet& net) {
  if (net.centers.empty()) throw Error(ErrorKind::EmptyInput, "decompose against an empty net");
  std::size_t best_index = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < net.centers.size(); ++c) {
    const double d = euclidean(x.coords(), net.centers[c].coords());
    if (d < best) {
      best = d;
      best_index = c;
    }
  }
  if (best > net.epsilon) {
    throw Error(ErrorKind::NotCovered, "point is " + std::to_string(best) +
                                           " from the nearest center, epsilon is " +
                                           std::to_string(net.epsilon));
  }
  const UnitVector& center = net.centers[best_index];
  Vector tail(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) tail[i] = x[i] - center[i];
  return Decomposition{best_index, center, std::move(tail)};
}

}  // namespace hypertess

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hypertess/geometry.hpp"
#include "hypertess/random.hpp"

namespace hypertess {

struct Sphere {
  std::size_t n = 0;
};

struct FiniteSet {
  std::vector<UnitVector> points;
};

/// Unit vectors with at most s nonzero coordinates.
struct SparseSphere {
  std::size_t n = 0;
  std::size_t s = 0;
};

// Only families whose support function sup_{x in K} <g, x> is exactly
// computable are modelled.
class SetModel {
 public:
  using Variant = std::variant<Sphere, FiniteSet, SparseSphere>;

  static SetModel sphere(std::size_t n);
  static SetModel finite(std::vector<UnitVector> points);
  static SetModel sparse(std::size_t n, std::size_t s);

  const Variant& variant() const noexcept { return variant_; }
  std::size_t dimension() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }
  /// K = -K, so sup |<g,x>| equals sup <g,x>.
  bool symmetric() const noexcept { return !std::holds_alternative<FiniteSet>(variant_); }

 private:
  SetModel(Variant v, std::size_t n, std::string name)
      : variant_(std::move(v)), n_(n), name_(std::move(name)) {}

  Variant variant_;
  std::size_t n_;
  std::string name_;
};

/// Parses `sphere:n=10`, `sparse:n=20,s=2` or `finite:path=points.csv`.
SetModel parse_model_spec(std::string_view spec);

/// One point drawn from lane `lane` of `seed`.
UnitVector sample_point(const SetModel& model, Seed seed, std::uint64_t lane = 0);
/// Point k comes from lane k, so the sample is independent of `threads`.
std::vector<UnitVector> sample_points(const SetModel& model, std::size_t count, Seed seed,
                                      std::size_t threads = 1);

/// sup_{x in K} <g, x>, exact.
double sup_signed(const SetModel& model, std::span<const double> g);
/// sup_{x in K} |<g, x>|.
double sup_abs(const SetModel& model, std::span<const double> g);

struct MeanWidthEstimate {
  double gaussian_width = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  /// gaussian_width / (c_n sqrt(n)), with c_n sqrt(n) = E||g|| estimated in the same run.
  double spherical_width = 0.0;
  double c_n = 0.0;
  /// Width of K - K, via E[sup <g,x> + sup <-g,y>].
  double diff_width = 0.0;
  double diff_std_error = 0.0;
};

/// Monte-Carlo estimate of E sup_{x in K} |<g, x>|; trial k uses lane k of `seed`.
MeanWidthEstimate mean_width(const SetModel& model, std::size_t trials, Seed seed,
                             std::size_t threads = 1);

}  // namespace hypertess

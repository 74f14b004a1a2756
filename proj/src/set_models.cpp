#include "hypertess/set_models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <numeric>

#include "hypertess/error.hpp"
#include "hypertess/io.hpp"
#include "hypertess/parallel.hpp"

namespace hypertess {

SetModel SetModel::sphere(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidModel, "sphere needs n >= 1");
  return SetModel(Sphere{n}, n, "sphere:n=" + std::to_string(n));
}

SetModel SetModel::finite(std::vector<UnitVector> points) {
  if (points.empty()) throw Error(ErrorKind::InvalidModel, "finite set needs at least one point");
  const std::size_t n = points.front().size();
  for (const auto& p : points) require_same_dim(p.size(), n, "finite set");
  const std::size_t count = points.size();
  return SetModel(FiniteSet{std::move(points)}, n,
                  "finite:k=" + std::to_string(count) + ",n=" + std::to_string(n));
}

SetModel SetModel::sparse(std::size_t n, std::size_t s) {
  if (n == 0 || s == 0 || s > n) {
    throw Error(ErrorKind::InvalidModel, "sparse sphere needs 1 <= s <= n");
  }
  return SetModel(SparseSphere{n, s}, n,
                  "sparse:n=" + std::to_string(n) + ",s=" + std::to_string(s));
}

namespace {

std::size_t parse_count(std::string_view key, const std::map<std::string, std::string>& kv) {
  const auto it = kv.find(std::string(key));
  if (it == kv.end()) throw Error(ErrorKind::InvalidModel, "missing '" + std::string(key) + "'");
  std::size_t value = 0;
  const auto& text = it->second;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::InvalidModel, "bad value for '" + std::string(key) + "': " + text);
  }
  return value;
}

}  // namespace

SetModel parse_model_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::InvalidModel, "model spec must look like kind:key=value,...");
  }
  const std::string kind(spec.substr(0, colon));
  std::map<std::string, std::string> kv;
  std::string_view rest = spec.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::InvalidModel, "expected key=value in '" + std::string(item) + "'");
    }
    kv[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }

  if (kind == "sphere") return SetModel::sphere(parse_count("n", kv));
  if (kind == "sparse") return SetModel::sparse(parse_count("n", kv), parse_count("s", kv));
  if (kind == "finite") {
    const auto it = kv.find("path");
    if (it == kv.end()) throw Error(ErrorKind::InvalidModel, "finite model needs path=");
    auto raw = read_points(it->second);
    std::vector<UnitVector> points;
    points.reserve(raw.size());
    for (auto& p : raw) points.emplace_back(std::move(p));
    return SetModel::finite(std::move(points));
  }
  throw Error(ErrorKind::InvalidModel, "unknown model kind '" + kind + "'");
}

UnitVector sample_point(const SetModel& model, Seed seed, std::uint64_t lane) {
  RandomStream stream(seed, lane);
  return std::visit(
      [&](const auto& m) -> UnitVector {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          Vector g(m.n);
          do {
            stream.fill_gaussian(g);
          } while (norm(g) == 0.0);
          return spherical_project(g);
        } else if constexpr (std::is_same_v<T, FiniteSet>) {
          return m.points[stream.uniform_index(m.points.size())];
        } else {
          // Partial Fisher-Yates gives a uniform s-subset.
          std::vector<std::size_t> idx(m.n);
          std::iota(idx.begin(), idx.end(), std::size_t{0});
          for (std::size_t k = 0; k < m.s; ++k) {
            const std::size_t j = k + stream.uniform_index(m.n - k);
            std::swap(idx[k], idx[j]);
          }
          Vector x(m.n, 0.0);
          do {
            for (std::size_t k = 0; k < m.s; ++k) x[idx[k]] = stream.gaussian();
          } while (norm(x) == 0.0);
          return spherical_project(x);
        }
      },
      model.variant());
}

std::vector<UnitVector> sample_points(const SetModel& model, std::size_t count, Seed seed,
                                      std::size_t threads) {
  std::vector<std::optional<UnitVector>> slots(count);
  parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) slots[k].emplace(sample_point(model, seed, k));
  });
  std::vector<UnitVector> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

double sup_signed(const SetModel& model, std::span<const double> g) {
  require_same_dim(g.size(), model.dimension(), "sup_signed");
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          return norm(g);
        } else if constexpr (std::is_same_v<T, FiniteSet>) {
          double best = -std::numeric_limits<double>::infinity();
          for (const auto& p : m.points) best = std::max(best, dot(g, p.coords()));
          return best;
        } else {
          std::vector<double> mags(g.size());
          std::transform(g.begin(), g.end(), mags.begin(), [](double v) { return std::abs(v); });
          std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(m.s - 1),
                           mags.end(), std::greater<>());
          // The top s sit in the first s slots, unordered; sort them so the
          // sum does not depend on nth_element's internal arrangement.
          std::sort(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(m.s), std::greater<>());
          double s = 0.0;
          for (std::size_t k = 0; k < m.s; ++k) s += mags[k] * mags[k];
          return std::sqrt(s);
        }
      },
      model.variant());
}

double sup_abs(const SetModel& model, std::span<const double> g) {
  const double plus = sup_signed(model, g);
  if (model.symmetric()) return plus;
  Vector neg(g.begin(), g.end());
  for (double& v : neg) v = -v;
  return std::max(plus, sup_signed(model, neg));
}

MeanWidthEstimate mean_width(const SetModel& model, std::size_t trials, Seed seed,
                             std::size_t threads) {
  if (trials < 2) throw Error(ErrorKind::InsufficientTrials, "mean_width needs at least 2 trials");
  const std::size_t n = model.dimension();
  std::vector<double> widths(trials), diffs(trials), norms(trials);
  parallel_for(trials, threads, [&](std::size_t begin, std::size_t end) {
    Vector g(n), neg(n);
    for (std::size_t k = begin; k < end; ++k) {
      RandomStream stream(seed, k);
      stream.fill_gaussian(g);
      for (std::size_t j = 0; j < n; ++j) neg[j] = -g[j];
      const double plus = sup_signed(model, g);
      const double minus = sup_signed(model, neg);
      widths[k] = std::max(plus, minus);
      diffs[k] = plus + minus;
      norms[k] = norm(g);
    }
  });

  auto mean_and_se = [trials](const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(trials);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(trials - 1));
    return std::pair{mean, sd / std::sqrt(static_cast<double>(trials))};
  };

  MeanWidthEstimate est;
  est.trials = trials;
  std::tie(est.gaussian_width, est.std_error) = mean_and_se(widths);
  std::tie(est.diff_width, est.diff_std_error) = mean_and_se(diffs);
  const double mean_norm = mean_and_se(norms).first;
  est.c_n = mean_norm / std::sqrt(static_cast<double>(n));
  est.spherical_width = est.gaussian_width / mean_norm;
  return est;
}

}  // namespace hypertess

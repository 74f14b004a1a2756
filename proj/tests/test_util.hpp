#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "hypertess/geometry.hpp"

namespace hypertess::testing {

// Test-side randomness deliberately uses the standard library engine so that
// fixtures never share a code path with the generator under test.
inline std::vector<double> std_gaussian(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

inline UnitVector random_unit(std::mt19937_64& rng, std::size_t n) {
  auto v = std_gaussian(rng, n);
  double r = 0.0;
  for (double x : v) r += x * x;
  r = std::sqrt(r);
  for (double& x : v) x /= r;
  return UnitVector(std::move(v));
}

inline std::filesystem::path temp_path(const std::string& name) {
  std::filesystem::path dir = HYPERTESS_TEST_TMP;
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace hypertess::testing

#include <doctest.h>

#include <cmath>

#include "hypertess/embedding.hpp"
#include "hypertess/error.hpp"
#include "test_util.hpp"

using namespace hypertess;
using hypertess::testing::random_unit;
using hypertess::testing::std_gaussian;

namespace {

GaussianMatrix identity2() { return GaussianMatrix(2, 2, {1.0, 0.0, 0.0, 1.0}); }

double max_abs_projection(const GaussianMatrix& a, std::span<const double> x,
                          std::span<const double> y) {
  double best = 0.0;
  for (double v : project(a, x)) best = std::max(best, std::abs(v));
  for (double v : project(a, y)) best = std::max(best, std::abs(v));
  return best;
}

}  // namespace

TEST_CASE("BitCode layout and padding") {
  BitCode c(70);
  c.set(0);
  c.set(64);
  c.set(69);
  CHECK(c.words()[0] == 1);
  CHECK(c.words()[1] == ((1ULL << 0) | (1ULL << 5)));
  CHECK(c.complement().words()[1] == (((1ULL << 6) - 1) & ~((1ULL << 0) | (1ULL << 5))));
  CHECK_THROWS_AS(BitCode(3, {0xFF}), Error);
  CHECK_THROWS_AS(BitCode(65, {0}), Error);
  CHECK(BitCode::from_string("1011").to_string() == "1011");
  CHECK(BitCode::from_string("10110001").to_hex() == "d8");
}

TEST_CASE("sign_embed with identity rows") {
  const auto a = identity2();
  const auto c = sign_embed(a, std::vector{0.6, -0.8});
  CHECK(c.to_string() == "10");
  CHECK(c.source_hash() == matrix_checksum(a));
}

TEST_CASE("an exactly zero inner product maps to bit 1") {
  const auto a = identity2();
  CHECK(sign_embed(a, std::vector{0.0, -1.0}).to_string() == "10");
  CHECK(sign_embed(a, std::vector{-0.0, 1.0}).to_string() == "11");
}

TEST_CASE("x and -x give complementary codes") {
  std::mt19937_64 rng(10);
  const auto a = gaussian_matrix({10, 0}, 129, 7);
  for (int k = 0; k < 50; ++k) {
    const auto x = random_unit(rng, 7);
    CHECK(sign_embed(a, x) == sign_embed(a, -x).complement());
  }
}

TEST_CASE("hamming values") {
  const auto c = BitCode::from_string("1011");
  CHECK(hamming(c, c) == 0.0);
  CHECK(hamming(c, c.complement()) == 1.0);
  CHECK(hamming(c, BitCode::from_string("1110")) == 0.5);
  CHECK_THROWS_AS(hamming(c, BitCode(5)), Error);
}

TEST_CASE("hamming agrees with a bit-by-bit count") {
  std::mt19937_64 rng(11);
  for (std::size_t m : {1, 63, 64, 65, 200}) {
    BitCode a(m), b(m);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const bool x = rng() & 1;
      const bool y = rng() & 1;
      if (x) a.set(i);
      if (y) b.set(i);
      diff += x != y;
    }
    CHECK(hamming_count(a, b) == diff);
  }
}

TEST_CASE("separation_fraction") {
  std::mt19937_64 rng(12);
  const auto a = gaussian_matrix({12, 0}, 10000, 5);
  const auto x = random_unit(rng, 5);
  const auto y = random_unit(rng, 5);
  CHECK(separation_fraction(a, x, x) == 0.0);
  CHECK(separation_fraction(a, x, -x) == 1.0);
  CHECK(separation_fraction(a, x, y) == hamming(sign_embed(a, x), sign_embed(a, y)));
  CHECK_THROWS_AS(separation_fraction(a, x, std::vector{1.0}), Error);
}

TEST_CASE("soft_hamming limits") {
  std::mt19937_64 rng(13);
  const auto a = gaussian_matrix({13, 0}, 300, 6);
  for (int k = 0; k < 20; ++k) {
    const auto x = std_gaussian(rng, 6);
    const auto y = std_gaussian(rng, 6);
    CHECK(soft_hamming(a, x, y, {0.0}) == separation_fraction(a, x, y));
    const double big = max_abs_projection(a, x, y);
    CHECK(soft_hamming(a, x, y, {big * 1.01}) == 0.0);
    CHECK(soft_hamming(a, x, y, {-big * 1.01}) == 1.0);
  }
}

TEST_CASE("soft_hamming uses strict inequalities") {
  // Row (1, 0): <a,x> = 0.5, <a,y> = -0.5. At t = 0.5 neither condition is strict.
  const GaussianMatrix a(1, 2, {1.0, 0.0});
  CHECK(soft_hamming(a, std::vector{0.5, 0.0}, std::vector{-0.5, 0.0}, {0.5}) == 0.0);
  CHECK(soft_hamming(a, std::vector{0.5, 0.0}, std::vector{-0.5, 0.0}, {0.49}) == 1.0);
  // Zero inner products: hard distance says "same side", soft t = 0 says "not separated" too.
  CHECK(soft_hamming(a, std::vector{0.0, 1.0}, std::vector{-1.0, 0.0}, {0.0}) == 0.0);
  CHECK(separation_fraction(a, std::vector{0.0, 1.0}, std::vector{-1.0, 0.0}) == 1.0);
}

TEST_CASE("soft_hamming is non-increasing in t and sandwiches the hard distance") {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 100; ++k) {
    const auto a = gaussian_matrix({14, static_cast<std::uint64_t>(k)}, 64, 4);
    const auto x = std_gaussian(rng, 4);
    const auto y = std_gaussian(rng, 4);
    const double hard = separation_fraction(a, x, y);
    double previous = 2.0;
    for (int s = -10; s <= 10; ++s) {
      const double t = 0.05 * s;
      const double d = soft_hamming(a, x, y, {t});
      CHECK(d <= previous);
      previous = d;
      if (t >= 0) CHECK(d <= hard);
      if (t <= 0) CHECK(d >= hard);
    }
  }
}

TEST_CASE("continuity sandwich under sup-norm bounded perturbations") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> unif(-0.2, 0.2);
  const double eps = 0.05;
  for (int k = 0; k < 200; ++k) {
    const auto a = gaussian_matrix({15, static_cast<std::uint64_t>(k)}, 80, 5);
    const auto x = std_gaussian(rng, 5);
    const auto y = std_gaussian(rng, 5);
    auto xp = std_gaussian(rng, 5);
    auto yp = std_gaussian(rng, 5);
    auto scale_to = [&](std::vector<double>& v) {
      double inf = 0.0;
      for (double p : project(a, v)) inf = std::max(inf, std::abs(p));
      for (double& c : v) c *= 0.9 * eps / inf;
    };
    scale_to(xp);
    scale_to(yp);
    std::vector<double> xs(5), ys(5);
    for (int j = 0; j < 5; ++j) {
      xs[j] = x[j] + xp[j];
      ys[j] = y[j] + yp[j];
    }
    const double t = unif(rng);
    const double mid = soft_hamming(a, xs, ys, {t});
    CHECK(soft_hamming(a, x, y, {t + eps}) <= mid);
    CHECK(mid <= soft_hamming(a, x, y, {t - eps}));
  }
}

TEST_CASE("batch_embed") {
  const auto a = gaussian_matrix({16, 0}, 150, 3);
  CHECK(batch_embed(a, std::span<const Vector>{}).empty());
  const std::vector<Vector> one{{0.1, 0.2, 0.3}};
  const auto single = batch_embed(a, one);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == sign_embed(a, one[0]));

  std::mt19937_64 rng(16);
  std::vector<Vector> pts;
  for (int k = 0; k < 100; ++k) pts.push_back(std_gaussian(rng, 3));
  CHECK(batch_embed(a, pts, 1) == batch_embed(a, pts, 8));

  pts[37] = {1.0, 2.0};
  try {
    batch_embed(a, pts);
    FAIL("expected a dimension error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
    CHECK(std::string(e.what()).find("point 37") != std::string::npos);
  }
}

TEST_CASE("sparse projection is bit-identical to the dense sum") {
  std::mt19937_64 rng(17);
  const auto a = gaussian_matrix({17, 0}, 50, 12);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> x(12, 0.0);
    x[rng() % 12] = std_gaussian(rng, 1)[0];
    x[rng() % 12] = std_gaussian(rng, 1)[0];
    const auto sparse = project(a, x);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double dense = 0.0;
      for (std::size_t j = 0; j < 12; ++j) dense += a(i, j) * x[j];
      CHECK(sparse[i] == dense);
    }
  }
}

TEST_CASE("mean separation fraction tracks the geodesic distance") {
  // Expectation over fresh arrangements; single-row trials are Bernoulli(d).
  const UnitVector x({1.0, 0.0, 0.0});
  const UnitVector y({std::cos(1.0), std::sin(1.0), 0.0});
  const double d = geodesic(x, y);
  const int trials = 20000;
  double sum = 0.0;
  for (int k = 0; k < trials; ++k) {
    sum += separation_fraction(gaussian_matrix({18, static_cast<std::uint64_t>(k)}, 1, 3), x, y);
  }
  const double sigma = std::sqrt(d * (1 - d) / trials);
  CHECK(std::abs(sum / trials - d) <= 3.0 * sigma);
}

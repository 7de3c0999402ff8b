#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "woms/bessel_params.hpp"
#include "woms/boundaries.hpp"
#include "woms/errors.hpp"
#include "woms/hitting_laws.hpp"
#include "woms/rng.hpp"
#include "woms/samplers.hpp"
#include "woms/special_functions.hpp"
#include "woms/stats.hpp"

using namespace woms;

TEST_CASE("BesselParams from dimension") {
  const BesselParams p = BesselParams::from_dimension(5);
  CHECK(p.nu() == 1.5);
  CHECK(p.nu_floor() == 1);
  CHECK(p.nu_frac() == 0.5);
  CHECK(BesselParams::from_dimension(1).nu() == -0.5);
  CHECK(BesselParams::from_index(2.0) == BesselParams::from_dimension(6));
  CHECK_THROWS_AS(BesselParams::from_dimension(0), ConfigError);
  CHECK_THROWS_AS(BesselParams::from_index(0.3), ConfigError);
}

TEST_CASE("rng reproducibility and stream separation") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  RngStream c(42, 8);
  bool any_diff = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.next_uniform();
    CHECK(x == b.next_uniform());
    any_diff = any_diff || x != c.next_uniform();
  }
  CHECK(any_diff);
}

TEST_CASE("uniforms lie in the open interval with mean 1/2") {
  RngStream rng(1, 0);
  std::vector<double> xs(100000);
  for (double& x : xs) {
    x = rng.next_uniform();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
  CHECK(std::abs(summarize(xs).mean - 0.5) <= 0.01);
}

TEST_CASE("gaussian moments") {
  RngStream rng(2, 0);
  const int n = 100000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.next_gaussian();
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean) <= 0.015);
  CHECK(std::abs(sum2 / n - mean * mean - 1.0) <= 0.02);
}

TEST_CASE("gamma sampler: exponential case") {
  RngStream rng(3, 0);
  std::vector<double> xs(50000);
  for (double& x : xs) x = sample_gamma_half_integer(1.0, 1.0, rng);
  const TestResult t = ks_one_sample(xs, [](double x) { return 1.0 - std::exp(-x); });
  CHECK(t.statistic <= ks_critical_one_sample(xs.size(), 1e-3));
}

TEST_CASE("gamma sampler: half-integer shape matches Gamma(1.5, 2)") {
  RngStream rng(4, 0);
  std::vector<double> xs(50000);
  for (double& x : xs) x = sample_gamma_half_integer(1.5, 2.0, rng);
  const TestResult t =
      ks_one_sample(xs, [](double x) { return reg_lower_gamma_p(1.5, x / 2.0); });
  CHECK(t.statistic <= ks_critical_one_sample(xs.size(), 1e-3));
}

TEST_CASE("gamma sampler mean") {
  RngStream rng(5, 0);
  const int n = 100000;
  std::vector<double> xs(n);
  for (double& x : xs) x = sample_gamma_half_integer(3.0, 1.0 / 3.0, rng);
  const double sd = std::sqrt(3.0) / 3.0;
  CHECK(std::abs(summarize(xs).mean - 1.0) <= 3.0 * sd / std::sqrt(n));
}

TEST_CASE("gamma sampler rejects other shapes") {
  RngStream rng(6, 0);
  CHECK_THROWS_AS(sample_gamma_half_integer(1.3, 1.0, rng), DomainError);
  CHECK_THROWS_AS(sample_gamma_half_integer(2.0, 0.0, rng), DomainError);
}

TEST_CASE("exact first-passage sampler") {
  for (auto [nu, a] : {std::pair{0.0, 1.0}, std::pair{0.5, 3.0}, std::pair{2.0, 5.0}}) {
    const BesselParams params = BesselParams::from_index(nu);
    const double end = t_max(a, params);
    RngStream rng(7, static_cast<std::uint64_t>(nu * 2));
    const int n = 100000;
    std::vector<double> xs(n);
    for (double& x : xs) {
      x = sample_first_passage_psi(a, params, rng);
      REQUIRE(x > 0.0);
      REQUIRE(x < end);
    }
    // E[t_max e^{-Z}] = t_max (1 + beta)^{-alpha}
    const Summary s = summarize(xs);
    const double mean = end * std::pow((nu + 1.0) / (nu + 2.0), nu + 2.0);
    CHECK(std::abs(s.mean - mean) <= 3.0 * s.stderr_mean);
    const TestResult t = ks_one_sample(xs, [&](double x) { return cdf_family1(a, params, x); });
    CHECK(t.statistic <= ks_critical_one_sample(n, 1e-3));
  }
}

TEST_CASE("scaled first-passage draws follow mu by chi-square") {
  // r = xi / t_max has density (nu+1)^{nu+2}/Gamma(nu+2) r^nu (-log r)^{nu+1} on [0, 1],
  // whose CDF is Q(nu + 2, (nu + 1)(-log r)).
  for (double nu : {0.0, 1.5}) {
    const BesselParams params = BesselParams::from_index(nu);
    const double a = 2.0;
    RngStream rng(8, 0);
    const int n = 50000;
    const int bins = 40;
    std::vector<double> counts(bins, 0.0);
    for (int i = 0; i < n; ++i) {
      const double r = sample_first_passage_psi(a, params, rng) / t_max(a, params);
      counts[std::min(bins - 1, static_cast<int>(r * bins))] += 1.0;
    }
    auto cdf = [&](double r) {
      return r <= 0.0 ? 0.0 : r >= 1.0 ? 1.0 : reg_upper_gamma_q(nu + 2.0, -(nu + 1.0) * std::log(r));
    };
    double stat = 0.0;
    for (int k = 0; k < bins; ++k) {
      const double expected = n * (cdf((k + 1.0) / bins) - cdf(static_cast<double>(k) / bins));
      stat += (counts[k] - expected) * (counts[k] - expected) / expected;
    }
    CHECK(stat <= chi_square_critical(bins - 1, 1e-3));
  }
}

TEST_CASE("unit sphere samples") {
  for (int dim : {1, 2, 3, 6}) {
    RngStream rng(9, static_cast<std::uint64_t>(dim));
    const int n = 100000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::vector<double> v = sample_unit_sphere(dim, rng);
      double norm2 = 0.0;
      for (double x : v) norm2 += x * x;
      REQUIRE(std::abs(std::sqrt(norm2) - 1.0) <= 1e-12);
      sum += v[0];
      sum2 += v[0] * v[0];
    }
    CHECK(std::abs(sum / n) <= 3.0 / std::sqrt(dim * static_cast<double>(n)));
    // Var(pi_1^2) <= 1, so 3/sqrt(n) bounds three standard errors
    CHECK(std::abs(sum2 / n - 1.0 / dim) <= 3.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("first coordinate draw consumes the same stream as the full vector") {
  for (int dim : {1, 2, 5}) {
    RngStream a(10, 0);
    RngStream b(10, 0);
    for (int i = 0; i < 100; ++i) {
      CHECK(sample_sphere_first_coordinate(dim, a) == sample_unit_sphere(dim, b)[0]);
    }
  }
}

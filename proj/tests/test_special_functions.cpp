#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "woms/errors.hpp"
#include "woms/special_functions.hpp"

using namespace woms;

namespace {

// I_nu(z) summed in long double, 60 terms.
long double bessel_i_long(long double nu, long double z) {
  long double sum = 0.0L;
  for (int n = 0; n < 60; ++n) {
    sum += std::exp((nu + 2 * n) * std::log(z / 2) - std::lgamma(n + 1.0L) -
                    std::lgamma(nu + n + 1.0L));
  }
  return sum;
}

}  // namespace

TEST_CASE("ln_gamma closed values") {
  CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(ln_gamma(1.0)) <= 1e-14);
  CHECK(std::abs(ln_gamma(2.0)) <= 1e-14);
  CHECK(ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(ln_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("ln_gamma against Boost on [0.5, 50]") {
  double worst = 0.0;
  for (double x = 0.5; x <= 50.0; x += 0.03125) {
    const double ref = boost::math::lgamma(x);
    worst = std::max(worst, std::abs(ln_gamma(x) - ref) / std::max(1.0, std::abs(ref)));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("ln_gamma recurrence") {
  for (double x = 0.5; x <= 10.0; x += 0.5) {
    const double lhs = std::exp(ln_gamma(x + 1.0));
    const double rhs = x * std::exp(ln_gamma(x));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
  }
}

TEST_CASE("ln_gamma rejects nonpositive arguments") {
  CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
  CHECK_THROWS_AS(ln_gamma(-1.5), DomainError);
}

TEST_CASE("bessel_i at zero") {
  CHECK(bessel_i(0.0, 0.0) == 1.0);
  CHECK(bessel_i(1.0, 0.0) == 0.0);
  CHECK(bessel_i(2.5, 0.0) == 0.0);
}

TEST_CASE("bessel_i against an extended precision series") {
  CHECK(bessel_i(0.0, 1.0) == doctest::Approx(1.26606587775200833).epsilon(1e-15));
  for (double nu : {-0.5, 0.0, 0.5, 1.0, 2.5, 4.0}) {
    for (double z : {0.01, 0.5, 1.0, std::sqrt(2.0), 3.0, 10.0, 25.0}) {
      const long double ref = bessel_i_long(nu, z);
      CHECK(std::abs(bessel_i(nu, z) - static_cast<double>(ref)) <=
            1e-14 * static_cast<double>(ref));
    }
  }
}

TEST_CASE("bessel_i against Boost up to z = 50") {
  for (double nu : {0.0, 0.5, 1.0, 3.5}) {
    for (double z : {5.0, 20.0, 40.0, 50.0}) {
      const double ref = boost::math::cyl_bessel_i(nu, z);
      CHECK(std::abs(bessel_i(nu, z) - ref) <= 1e-13 * ref);
    }
  }
}

TEST_CASE("bessel_i monotone in z") {
  for (double nu : {0.0, 0.5, 2.0}) {
    double prev = bessel_i(nu, 0.0);
    for (double z = 0.05; z <= 30.0; z += 0.05) {
      const double v = bessel_i(nu, z);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("bessel_i rejects negative z") { CHECK_THROWS_AS(bessel_i(0.0, -1.0), DomainError); }

TEST_CASE("reg_upper_gamma_q closed values") {
  CHECK(reg_upper_gamma_q(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(reg_upper_gamma_q(2.0, 1.0) == doctest::Approx(2.0 / std::numbers::e).epsilon(1e-14));
  for (double a : {0.5, 1.0, 3.5, 10.0}) CHECK(reg_upper_gamma_q(a, 0.0) == 1.0);
}

TEST_CASE("reg_upper_gamma_q against Boost") {
  double worst = 0.0;
  for (double a : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.5, 6.0, 10.0, 25.0}) {
    for (double x = 0.0; x <= 60.0; x += 0.137) {
      worst = std::max(worst, std::abs(reg_upper_gamma_q(a, x) - boost::math::gamma_q(a, x)));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("reg_upper_gamma_q monotone with limits") {
  for (double a : {0.5, 2.0, 6.0}) {
    double prev = 1.0;
    for (double x = 0.0; x <= 10.0 * a; x += 0.01) {
      const double q = reg_upper_gamma_q(a, x);
      CHECK(q <= prev + 1e-15);
      CHECK(q >= 0.0);
      prev = q;
    }
    // Q(1/2, 25) = erfc(5) ~ 1.5e-12
    CHECK(reg_upper_gamma_q(a, 50.0 * a) <= 1e-11);
  }
}

TEST_CASE("P and Q are complementary") {
  for (double a : {0.5, 2.0, 7.5}) {
    for (double x : {0.1, 1.0, 5.0, 12.0}) {
      CHECK(reg_lower_gamma_p(a, x) + reg_upper_gamma_q(a, x) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("reg_upper_gamma_q domain") {
  CHECK_THROWS_AS(reg_upper_gamma_q(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(reg_upper_gamma_q(1.0, -1.0), DomainError);
}

TEST_CASE("log_bessel_i continues the series past z = 50") {
  for (double nu : {0.0, 0.5, 2.0, 4.0}) {
    for (double z : {0.5, 10.0, 49.0, 51.0, 120.0, 600.0}) {
      const double ref = std::log(boost::math::cyl_bessel_i(nu, z));
      CHECK(log_bessel_i(nu, z) == doctest::Approx(ref).epsilon(1e-14));
    }
    CHECK(std::isfinite(log_bessel_i(nu, 5000.0)));
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "woms/bessel_params.hpp"
#include "woms/boundaries.hpp"
#include "woms/errors.hpp"

using namespace woms;

namespace {

const double kE = std::numbers::e;

// Golden-section search for the maximum of f on [lo, hi].
template <class F>
double golden_max(F f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  for (int i = 0; i < 200; ++i) {
    const double c = b - r * (b - a);
    const double d = a + r * (b - a);
    (f(c) > f(d) ? b : a) = (f(c) > f(d) ? d : c);
  }
  return f(0.5 * (a + b));
}

BesselParams nu_params(double nu) { return BesselParams::from_index(nu); }

}  // namespace

TEST_CASE("t_max values") {
  CHECK(t_max(1.0, nu_params(0)) == doctest::Approx(1.0));
  CHECK(t_max(kE, nu_params(0)) == doctest::Approx(kE));
  CHECK(t_max(2.0 * 4.0, nu_params(2)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(t_max(0.0, nu_params(0)), DomainError);
}

TEST_CASE("psi values and domain") {
  const BesselParams p0 = nu_params(0);
  CHECK(psi(1.0, p0, 1.0 / kE) == doctest::Approx(std::sqrt(2.0 / kE)));
  CHECK(psi(1.0, p0, 1.0) == 0.0);
  CHECK(psi(1.0, p0, 0.0) == 0.0);
  CHECK(psi(1.0, p0, 1e-12) < 1e-5);
  const BesselParams p2 = nu_params(2);
  CHECK(psi(5.0, p2, t_max(5.0, p2)) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK_NOTHROW(psi(1.0, p0, 1.0 + 1e-13));
  CHECK_THROWS_AS(psi(1.0, p0, 1.0 + 1e-9), DomainError);
  CHECK_THROWS_AS(psi(1.0, p0, -0.1), DomainError);
}

TEST_CASE("psi_sup matches the formula, a dense grid and golden-section search") {
  CHECK(psi_sup(1.0, nu_params(0)) == doctest::Approx(std::sqrt(2.0 / kE)));
  for (double nu : {-0.5, 0.0, 0.5, 1.0, 2.0, 4.0}) {
    const BesselParams p = nu_params(nu);
    for (double a : {0.3, 1.0, 7.0}) {
      const double end = t_max(a, p);
      const double sup = psi_sup(a, p);
      CHECK(psi(a, p, end / kE) == doctest::Approx(sup).epsilon(1e-13));
      CHECK(std::abs(golden_max([&](double t) { return psi(a, p, t); }, 0.0, end) - sup) <=
            1e-10);
      double grid_max = 0.0;
      double arg_max = 0.0;
      for (int i = 0; i <= 1000; ++i) {
        const double t = end * i / 1000.0;
        const double v = psi(a, p, t);
        CHECK(v >= 0.0);
        if (v > grid_max) {
          grid_max = v;
          arg_max = t;
        }
      }
      CHECK(grid_max <= sup);
      CHECK(std::abs(arg_max - end / kE) <= end / 1000.0);
    }
  }
}

TEST_CASE("level image constant gives gamma times the gap") {
  CHECK(image_constant_level(0.0, 1.0, 1.0, nu_params(0)) == doctest::Approx(kE / 2.0));
  CHECK(image_constant_level(4.0, 2.0, 0.9, nu_params(1)) == 0.0);
  for (double nu : {0.0, 1.0, 2.0, 3.5}) {
    const BesselParams p = nu_params(nu);
    CHECK(psi_sup(image_constant_level(0.0, 2.0, 0.9, p), p) == doctest::Approx(1.8));
    CHECK(psi_sup(image_constant_level(1.0, 2.0, 0.5, p), p) == doctest::Approx(0.5));
  }
}

TEST_CASE("scaling property of psi") {
  for (double nu : {0.0, 1.5, 3.0}) {
    const BesselParams p = nu_params(nu);
    const double end1 = t_max(1.0, p);
    for (double big_a : {0.01, 0.7, 12.0}) {
      for (int i = 1; i < 50; ++i) {
        const double t = end1 * i / 50.0;
        const double lhs = psi(big_a, p, std::pow(big_a, 1.0 / (nu + 1.0)) * t);
        const double rhs = std::pow(big_a, 1.0 / (2.0 * nu + 2.0)) * psi(1.0, p, t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("second boundary") {
  const BesselParams p0 = nu_params(0);
  CHECK(psi_second(2.0, 1.0, p0, 1.0) == doctest::Approx(std::sqrt(8.0 * std::log(2.0))));
  for (double nu : {0.0, 1.0, 2.5}) {
    const BesselParams p = nu_params(nu);
    const double t = 1e6;
    CHECK(psi_second(1.0, 1.0, p, t) / std::sqrt(t) ==
          doctest::Approx(std::sqrt(2.0 * (nu + 1.0))).epsilon(1e-5));
  }
  const double edge = psi_second_horizon(0.5, 1.0, p0);
  CHECK(edge == doctest::Approx(1.0));  // s a / (1 - a)
  CHECK(psi_second(0.5, 1.0, p0, edge) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK_THROWS_AS(psi_second(0.5, 1.0, p0, 1.01), DomainError);
  CHECK(std::isinf(psi_second_horizon(1.5, 1.0, p0)));
  // growth for a > 1 at large times
  double prev = 0.0;
  for (double t = 1.0; t < 1e4; t *= 2.0) {
    const double v = psi_second(1.5, 1.0, p0, t);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("Laplace boundary") {
  const BesselParams p0 = nu_params(0);
  CHECK(psi_laplace(1.0, 1.0, p0, 0.0) == 0.0);
  CHECK(psi_laplace(1.0, 1.0, p0, 1e-10) < 1e-4);
  // Planar formula: lambda t/(1+2 lambda t) + t sqrt((lambda/(1+2 lambda t))^2 + (2/t) log(a(1+2 lambda t)/t))
  for (double t : {0.1, 0.5, 2.0, 30.0}) {
    const double a = 1.3;
    const double lam = 0.8;
    const double q = lam / (1 + 2 * lam * t);
    const double ref = lam * t / (1 + 2 * lam * t) +
                       t * std::sqrt(q * q + 2.0 / t * std::log(a * (1 + 2 * lam * t) / t));
    CHECK(psi_laplace(a, lam, p0, t) == doctest::Approx(ref).epsilon(1e-13));
  }
  // threshold lambda >= 1/(2a) in the plane, horizon a/(1 - 2 lambda a) below it
  CHECK(std::isinf(psi_laplace_horizon(1.0, 0.5, p0)));
  CHECK(psi_laplace_horizon(1.0, 0.25, p0) == doctest::Approx(2.0));
  for (double nu : {0.0, 1.0, 2.0}) {
    const BesselParams p = nu_params(nu);
    const double lam = 0.1;
    const double a = 0.5;
    const double end = psi_laplace_horizon(a, lam, p);
    REQUIRE(std::isfinite(end));
    CHECK(psi_laplace(a, lam, p, end) ==
          doctest::Approx(2.0 * lam * end / (1.0 + 2.0 * lam * end)).epsilon(1e-6));
    CHECK_THROWS_AS(psi_laplace(a, lam, p, end * 1.01), DomainError);
  }
}

TEST_CASE("F_nu values") {
  CHECK(f_nu(2.0 / kE, 0.0, nu_params(0)) == doctest::Approx(1.0));
  CHECK(f_nu(1.0, 2000.0, nu_params(1)) == 0.0);
  CHECK_THROWS_AS(f_nu(0.0, 1.0, nu_params(0)), DomainError);
}

TEST_CASE("comparison: psi at F_nu(r, u) stays under sqrt(r - u t)") {
  for (auto [r, u, nu] : {std::tuple{1.0, 1.0, 0.0}, std::tuple{4.0, 2.0, 1.0},
                          std::tuple{1.0, 0.5, 2.0}, std::tuple{0.3, 3.0, 0.5},
                          std::tuple{9.0, 0.1, 4.0}, std::tuple{2.0, 5.0, -0.5}}) {
    const BesselParams p = nu_params(nu);
    const double a = f_nu(r, u, p);
    const double end = t_max(a, p);
    for (int i = 0; i <= 1000; ++i) {
      const double t = end * i / 1000.0;
      const double envelope = r - u * t;
      REQUIRE(envelope >= 0.0);
      CHECK(psi(a, p, t) <= std::sqrt(envelope) + 1e-12);
    }
  }
}

TEST_CASE("decreasing-curve constants and containment") {
  const BesselParams p0 = nu_params(0);
  const double kappa = decreasing_curve_kappa(1.0, 1.0, p0);
  CHECK(kappa == doctest::Approx(0.2));
  const DecreasingCurve unit{[](double t) { return 1.0 - t; }, 1.0};
  CHECK(image_constant_decreasing(0.0, 0.0, unit, kappa, p0) == doctest::Approx(0.2));
  CHECK(image_constant_decreasing(0.25, 0.5, unit, kappa, p0) == 0.0);

  for (double nu : {0.0, 0.5, 2.0}) {
    const BesselParams p = nu_params(nu);
    for (double slope : {0.1, 1.0, 3.0}) {
      const DecreasingCurve curve{[slope](double t) { return 2.0 - slope * t; }, slope};
      const double k = decreasing_curve_kappa(2.0, slope, p);
      for (auto [chi, xi] : {std::pair{0.0, 0.0}, std::pair{1.0, 0.2}, std::pair{0.01, 0.05}}) {
        if (curve.level(xi) <= std::sqrt(chi)) continue;
        const double big_a = image_constant_decreasing(chi, xi, curve, k, p);
        const double end = t_max(big_a, p);
        for (int i = 0; i <= 500; ++i) {
          const double h = end * i / 500.0;
          CHECK(psi(big_a, p, h) <= curve.level(xi) - std::sqrt(chi) - slope * h + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("square-root constants and containment") {
  const BesselParams p1 = nu_params(1);
  const SquareRoot curve{1.0, 0.5};
  CHECK(image_constant_sqrt(0.0, 0.0, curve, 0.9, p1) ==
        doctest::Approx(0.9 * f_nu(1.0, 0.5, p1)));
  CHECK(image_constant_sqrt(0.0, 0.0, curve, 1e-300, p1) < 1e-299);
  CHECK_THROWS_AS(image_constant_sqrt(1.0, 0.0, curve, 0.9, p1), DomainError);
  CHECK_THROWS_AS(image_constant_sqrt(0.0, 2.0, curve, 0.9, p1), DomainError);

  for (double nu : {-0.5, 0.0, 1.0, 2.5}) {
    const BesselParams p = nu_params(nu);
    for (auto [b0, b1] : {std::pair{1.0, 0.5}, std::pair{4.0, 3.0}, std::pair{0.5, 0.01}}) {
      const SquareRoot c{b0, b1};
      for (auto [chi_frac, xi_frac] :
           {std::pair{0.0, 0.0}, std::pair{0.5, 0.3}, std::pair{0.9, 0.6}}) {
        const double xi = xi_frac * b0 / b1;
        const double chi = chi_frac * (b0 - b1 * xi);
        const double big_a = image_constant_sqrt(chi, xi, c, 0.9, p);
        const double end = t_max(big_a, p);
        for (int i = 1; i <= 500; ++i) {
          const double h = end * i / 500.0;
          CHECK(std::sqrt(chi) + psi(big_a, p, h) < square_root_level(c, xi + h));
        }
      }
    }
  }
}

TEST_CASE("boundary validation") {
  CHECK_THROWS_AS(validate_boundary(ConstantLevel{0.0}), ConfigError);
  CHECK_THROWS_AS(validate_boundary(SquareRoot{1.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(validate_boundary(DecreasingCurve{[](double) { return -1.0; }, 1.0}),
                  ConfigError);
  CHECK_THROWS_AS(validate_boundary(DecreasingCurve{[](double) { return 1.0; }, 0.0}),
                  ConfigError);
  CHECK_NOTHROW(validate_boundary(ConstantLevel{2.0}));
  CHECK(boundary_value(SquareRoot{1.0, 0.5}, 3.0) == 0.0);
  CHECK(boundary_value(ConstantLevel{2.0}, 100.0) == 2.0);
}

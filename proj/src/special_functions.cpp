#include "woms/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "woms/errors.hpp"

namespace woms {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr int kMaxIterations = 10000;
constexpr double kGammaEps = 1e-16;
constexpr double kTiny = 1e-300;

double lower_series(double alpha, double x, double log_prefactor) {
  // P(alpha, x) = e^{-x} x^alpha / Gamma(alpha + 1) * sum_n x^n / ((alpha+1)...(alpha+n))
  double ap = alpha;
  double term = 1.0 / alpha;
  double sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kGammaEps) break;
  }
  return sum * std::exp(log_prefactor);
}

double upper_continued_fraction(double alpha, double x, double log_prefactor) {
  // Modified Lentz evaluation of the continued fraction for Gamma(alpha, x).
  double b = x + 1.0 - alpha;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - alpha);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kGammaEps) break;
  }
  return std::exp(log_prefactor) * h;
}

void check_gamma_args(double alpha, double x) {
  if (!(alpha > 0.0) || !(x >= 0.0) || std::isnan(x)) {
    throw DomainError("incomplete gamma: need alpha > 0 and x >= 0 (alpha=" +
                      std::to_string(alpha) + ", x=" + std::to_string(x) + ")");
  }
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("ln_gamma: x must be positive (got " + std::to_string(x) + ")");
  }
  if (std::isinf(x)) return x;
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - ln_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

double bessel_i(double nu, double z) {
  if (!(z >= 0.0)) {
    throw DomainError("bessel_i: z must be >= 0 (got " + std::to_string(z) + ")");
  }
  if (!(nu >= -0.5)) {
    throw DomainError("bessel_i: nu must be >= -1/2 (got " + std::to_string(nu) + ")");
  }
  if (z == 0.0) {
    if (nu == 0.0) return 1.0;
    return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const double half = 0.5 * z;
  const double quarter_sq = half * half;
  double term = std::exp(nu * std::log(half) - ln_gamma(nu + 1.0));
  double sum = term;
  for (int n = 1; n < 200; ++n) {
    term *= quarter_sq / (static_cast<double>(n) * (nu + static_cast<double>(n)));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double log_bessel_i(double nu, double z) {
  if (z <= 50.0) return std::log(bessel_i(nu, z));
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (k * 8.0 * z);
    // the expansion is asymptotic: stop once terms start growing
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return z - 0.5 * std::log(2.0 * std::numbers::pi * z) + std::log(sum);
}

double reg_upper_gamma_q(double alpha, double x) {
  check_gamma_args(alpha, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double log_prefactor = -x + alpha * std::log(x) - ln_gamma(alpha);
  if (x < alpha + 1.0) {
    return 1.0 - lower_series(alpha, x, log_prefactor);
  }
  return upper_continued_fraction(alpha, x, log_prefactor);
}

double reg_lower_gamma_p(double alpha, double x) {
  check_gamma_args(alpha, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double log_prefactor = -x + alpha * std::log(x) - ln_gamma(alpha);
  if (x < alpha + 1.0) {
    return lower_series(alpha, x, log_prefactor);
  }
  return 1.0 - upper_continued_fraction(alpha, x, log_prefactor);
}

}  // namespace woms

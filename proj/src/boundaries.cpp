#include "woms/boundaries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "woms/errors.hpp"

namespace woms {

namespace {

constexpr double kDomainSlack = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr double kLogClamp = 1e-12;

// A log argument within 1e-12 of 1 (or below it, from rounding) counts as 1.
double clamp_log(double log_value) { return log_value <= kLogClamp ? 0.0 : log_value; }

void check_positive(double value, const char* what) {
  if (!(value > 0.0)) {
    throw DomainError(std::string(what) + " must be positive (got " + std::to_string(value) + ")");
  }
}

void check_time_in_domain(double t, double horizon, const char* what) {
  if (!(t >= 0.0)) {
    throw DomainError(std::string(what) + ": time must be >= 0 (got " + std::to_string(t) + ")");
  }
  if (t > horizon * (1.0 + kDomainSlack)) {
    throw DomainError(std::string(what) + ": time " + std::to_string(t) +
                      " is beyond the end of the boundary domain " + std::to_string(horizon));
  }
}

}  // namespace

double t_max(double a, const BesselParams& params) {
  check_positive(a, "t_max: a");
  return std::exp((std::log(a) - params.log_norm()) / (params.nu() + 1.0));
}

double psi(double a, const BesselParams& params, double t) {
  check_positive(a, "psi: a");
  check_time_in_domain(t, t_max(a, params), "psi");
  if (t == 0.0) return 0.0;
  const double log_arg = std::log(a) - params.log_norm() - (params.nu() + 1.0) * std::log(t);
  return std::sqrt(2.0 * t * clamp_log(log_arg));
}

double psi_sup(double a, const BesselParams& params) {
  const double nu1 = params.nu() + 1.0;
  return std::sqrt(2.0 * nu1 / std::numbers::e * t_max(a, params));
}

double psi_second_horizon(double a, double s, const BesselParams& params) {
  check_positive(a, "psi_second: a");
  check_positive(s, "psi_second: s");
  if (a >= 1.0) return kInf;
  return s / (std::pow(1.0 / a, 1.0 / (params.nu() + 1.0)) - 1.0);
}

double psi_second(double a, double s, const BesselParams& params, double t) {
  check_time_in_domain(t, psi_second_horizon(a, s, params), "psi_second");
  if (t == 0.0) return 0.0;
  const double bracket = (params.nu() + 1.0) * std::log1p(s / t) + std::log(a);
  return std::sqrt(2.0 * t * (t + s) / s * clamp_log(bracket));
}

double psi_laplace_horizon(double a, double lambda, const BesselParams& params) {
  check_positive(a, "psi_laplace: a");
  check_positive(lambda, "psi_laplace: lambda");
  const double c = std::exp((params.log_norm() - std::log(a)) / (params.nu() + 1.0));
  if (lambda >= 0.5 * c) return kInf;
  return 1.0 / (c - 2.0 * lambda);
}

namespace {

// log(a (1 + 2 lambda t)^{nu+1} / (2^nu t^{nu+1} Gamma(nu+1))), clamped.
double laplace_log_term(double a, double lambda, const BesselParams& params, double t) {
  const double nu1 = params.nu() + 1.0;
  return clamp_log(std::log(a) + nu1 * std::log1p(2.0 * lambda * t) - params.log_norm() -
                   nu1 * std::log(t));
}

}  // namespace

double laplace_root_term(double a, double lambda, const BesselParams& params, double t) {
  check_time_in_domain(t, psi_laplace_horizon(a, lambda, params), "psi_laplace");
  if (t == 0.0) return kInf;
  const double drift = lambda / (1.0 + 2.0 * lambda * t);
  return std::sqrt(drift * drift + 2.0 / t * laplace_log_term(a, lambda, params, t));
}

double psi_laplace(double a, double lambda, const BesselParams& params, double t) {
  check_time_in_domain(t, psi_laplace_horizon(a, lambda, params), "psi_laplace");
  if (t == 0.0) return 0.0;
  const double drift_t = lambda * t / (1.0 + 2.0 * lambda * t);
  // t * sqrt(q) written as sqrt(t^2 q) so that small t stays accurate.
  return drift_t +
         std::sqrt(drift_t * drift_t + 2.0 * t * laplace_log_term(a, lambda, params, t));
}

double f_nu(double r, double u, const BesselParams& params) {
  check_positive(r, "f_nu: r");
  if (!(u >= 0.0)) throw DomainError("f_nu: u must be >= 0");
  const double nu1 = params.nu() + 1.0;
  return 0.5 * std::exp(nu1 * std::log(std::numbers::e * r / nu1)) * params.gamma_nu1() *
         std::exp(-0.5 * u);
}

double image_constant_level(double chi, double level, double gamma, const BesselParams& params) {
  const double nu1 = params.nu() + 1.0;
  const double gap = level - std::sqrt(chi);
  const double base = gamma * gamma * gap * gap * std::numbers::e / nu1;
  return std::pow(base, nu1) * params.gamma_nu1() / 2.0;
}

double square_root_level(const SquareRoot& curve, double t) {
  const double radicand = curve.beta0 - curve.beta1 * t;
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

double boundary_value(const BoundarySpec& boundary, double t) {
  struct Visitor {
    double t;
    double operator()(const ConstantLevel& b) const { return b.level; }
    double operator()(const DecreasingCurve& b) const { return b.level(t); }
    double operator()(const SquareRoot& b) const { return square_root_level(b, t); }
  };
  return std::visit(Visitor{t}, boundary);
}

void validate_boundary(const BoundarySpec& boundary) {
  struct Visitor {
    void operator()(const ConstantLevel& b) const {
      if (!(b.level > 0.0)) throw ConfigError("level: must be positive");
    }
    void operator()(const DecreasingCurve& b) const {
      if (!b.level) throw ConfigError("curve: level function is empty");
      if (!(b.level(0.0) > 0.0)) throw ConfigError("curve: l(0) must be positive");
      if (!(b.delta_min > 0.0)) throw ConfigError("delta-min: must be positive");
    }
    void operator()(const SquareRoot& b) const {
      if (!(b.beta0 > 0.0)) throw ConfigError("beta0: must be positive");
      if (!(b.beta1 > 0.0)) throw ConfigError("beta1: must be positive");
    }
  };
  std::visit(Visitor{}, boundary);
}

double decreasing_curve_kappa(double level0, double delta_min, const BesselParams& params) {
  const double nu = params.nu();
  const double big_l = std::max({level0, delta_min, std::sqrt(nu + 1.0)});
  return std::exp(nu * std::numbers::ln2 + std::log(params.gamma_nu1()) -
                  (nu + 1.0) * std::log(5.0) - (2.0 * nu + 2.0) * std::log(big_l));
}

double image_constant_decreasing(double chi, double elapsed, const DecreasingCurve& curve,
                                 double kappa, const BesselParams& params) {
  const double gap = std::max(curve.level(elapsed) - std::sqrt(chi), 0.0);
  return kappa * std::pow(gap, 2.0 * (params.nu() + 1.0));
}

double image_constant_sqrt(double chi, double elapsed, const SquareRoot& curve, double kappa,
                           const BesselParams& params) {
  const double level = square_root_level(curve, elapsed);
  const double root = std::sqrt(chi);
  if (!(level > root)) {
    throw DomainError("image_constant_sqrt: point lies on or outside the boundary");
  }
  const double gap = level - root;
  return kappa * f_nu(gap * gap, curve.beta1 * (1.0 - root / level), params);
}

}  // namespace woms

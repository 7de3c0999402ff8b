#include "woms/hitting_laws.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "woms/boundaries.hpp"
#include "woms/errors.hpp"
#include "woms/special_functions.hpp"

namespace woms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadTolerance = 1e-12;

bool in_domain(double t, double end) { return t > 0.0 && t <= end; }

}  // namespace

double p0_density(const BesselParams& params, double t, double x) {
  if (!(t > 0.0)) throw DomainError("p0_density: t must be positive");
  if (!(x >= 0.0)) throw DomainError("p0_density: x must be >= 0");
  const int power = params.dimension() - 1;
  if (x == 0.0) {
    if (power == 0) return std::exp(-params.log_norm() - (params.nu() + 1.0) * std::log(t));
    return 0.0;
  }
  return std::exp(power * std::log(x) - x * x / (2.0 * t) - params.log_norm() -
                  (params.nu() + 1.0) * std::log(t));
}

double py_density(const BesselParams& params, double y, double t, double x) {
  if (!(y > 0.0)) throw DomainError("py_density: y must be positive");
  if (!(t > 0.0)) throw DomainError("py_density: t must be positive");
  if (!(x >= 0.0)) throw DomainError("py_density: x must be >= 0");
  if (x == 0.0) return 0.0;
  const double nu = params.nu();
  return std::exp(std::log(x / t) + nu * std::log(x / y) - (x * x + y * y) / (2.0 * t) +
                  log_bessel_i(nu, x * y / t));
}

double density_family1(double a, const BesselParams& params, double t) {
  const double end = t_max(a, params);
  if (!in_domain(t, end)) return 0.0;
  const double log_arg =
      std::max(std::log(a) - params.log_norm() - (params.nu() + 1.0) * std::log(t), 0.0);
  if (log_arg == 0.0) return 0.0;
  return std::exp((params.nu() + 1.0) * std::log(2.0 * t * log_arg) - std::log(2.0 * a * t));
}

double cdf_family1(double a, const BesselParams& params, double t) {
  const double end = t_max(a, params);
  if (t <= 0.0) return 0.0;
  if (t >= end) return 1.0;
  const double nu1 = params.nu() + 1.0;
  return reg_upper_gamma_q(params.nu() + 2.0, nu1 * std::log(end / t));
}

double density_family2(double a, double s, const BesselParams& params, double t) {
  const double end = psi_second_horizon(a, s, params);
  if (!in_domain(t, end)) return 0.0;
  const double nu = params.nu();
  const double big_lambda = (nu + 1.0) * std::log1p(s / t) + std::log(a);
  if (!(big_lambda > 0.0)) return 0.0;
  const double log_density = -std::log(params.gamma_nu1()) - std::log(t) +
                             nu * std::log1p(t / s) + (nu + 1.0) * std::log(big_lambda) -
                             (t + s) / s * big_lambda;
  return std::exp(log_density);
}

double density_family3(double a, double lambda, const BesselParams& params, double t) {
  const double end = psi_laplace_horizon(a, lambda, params);
  if (!in_domain(t, end)) return 0.0;
  const double boundary = psi_laplace(a, lambda, params, t);
  if (boundary == 0.0) return 0.0;
  return laplace_root_term(a, lambda, params, t) * p0_density(params, t, boundary);
}

double laplace_transform_level(double level, const BesselParams& params, double lambda) {
  if (!(level > 0.0)) throw DomainError("laplace_transform_level: level must be positive");
  if (!(lambda > 0.0)) throw DomainError("laplace_transform_level: lambda must be positive");
  const double nu = params.nu();
  const double z = level * std::sqrt(2.0 * lambda);
  return std::exp(nu * std::log(z) - params.log_norm()) / bessel_i(nu, z);
}

double integrate_density(const std::function<double(double)>& density, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  if (std::isinf(hi)) {
    thread_local boost::math::quadrature::exp_sinh<double> half_line;
    if (lo == 0.0) return half_line.integrate(density, kQuadTolerance);
    return half_line.integrate([&](double u) { return density(lo + u); }, kQuadTolerance);
  }
  thread_local boost::math::quadrature::tanh_sinh<double> finite;
  return finite.integrate(density, lo, hi, kQuadTolerance);
}

HittingLaw::HittingLaw(Family family, BesselParams params)
    : family_(family), params_(params), domain_end_(0.0) {
  struct Visitor {
    const BesselParams& p;
    double operator()(const FirstFamily& f) const { return t_max(f.a, p); }
    double operator()(const SecondFamily& f) const { return psi_second_horizon(f.a, f.s, p); }
    double operator()(const LaplaceFamily& f) const {
      return psi_laplace_horizon(f.a, f.lambda, p);
    }
  };
  domain_end_ = std::visit(Visitor{params_}, family_);
}

double HittingLaw::boundary(double t) const {
  struct Visitor {
    const BesselParams& p;
    double t;
    double operator()(const FirstFamily& f) const { return psi(f.a, p, t); }
    double operator()(const SecondFamily& f) const { return psi_second(f.a, f.s, p, t); }
    double operator()(const LaplaceFamily& f) const { return psi_laplace(f.a, f.lambda, p, t); }
  };
  return std::visit(Visitor{params_, t}, family_);
}

double HittingLaw::density(double t) const {
  struct Visitor {
    const BesselParams& p;
    double t;
    double operator()(const FirstFamily& f) const { return density_family1(f.a, p, t); }
    double operator()(const SecondFamily& f) const { return density_family2(f.a, f.s, p, t); }
    double operator()(const LaplaceFamily& f) const {
      return density_family3(f.a, f.lambda, p, t);
    }
  };
  return std::visit(Visitor{params_, t}, family_);
}

double HittingLaw::cdf(double t) const {
  if (const auto* first = std::get_if<FirstFamily>(&family_)) {
    return cdf_family1(first->a, params_, t);
  }
  if (t <= 0.0) return 0.0;
  const double upper = std::min(t, domain_end_);
  return integrate_density([this](double u) { return density(u); }, 0.0, upper);
}

double HittingLaw::mass() const {
  return integrate_density([this](double u) { return density(u); }, 0.0, domain_end_);
}

}  // namespace woms

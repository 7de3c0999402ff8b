#pragma once

#include <functional>
#include <utility>
#include <variant>

#include "woms/bessel_params.hpp"

namespace woms {

// Transition densities of the Bessel process, closed-form hitting-time
// densities of the three image-boundary families and the Laplace transform
// of the first passage time of a level.

/// Density of the Bessel process started at 0, at time t and radius x.
double p0_density(const BesselParams& params, double t, double x);

/// Density of the Bessel process started at y > 0, at time t and radius x.
double py_density(const BesselParams& params, double y, double t, double x);

/// Hitting density of psi_a: (1 / 2at) (2t log(a / (Gamma(nu+1) t^{nu+1} 2^nu)))^{nu+1}.
/// Zero outside (0, t_max(a)].
double density_family1(double a, const BesselParams& params, double t);

/// CDF of the psi_a hitting time through its Gamma representation:
/// Q(nu + 2, (nu + 1) log(t_max / t)).
double cdf_family1(double a, const BesselParams& params, double t);

/// Hitting density of the second image boundary psi_second(a, s, .).
double density_family2(double a, double s, const BesselParams& params, double t);

/// Hitting density of the Laplace-transform boundary psi_laplace(a, lambda, .),
/// exactly as the closed form is stated: root term times p_0(t, psi(t)).
double density_family3(double a, double lambda, const BesselParams& params, double t);

/// E_0[exp(-lambda tau_l)] = (l sqrt(2 lambda))^nu / (2^nu Gamma(nu+1) I_nu(l sqrt(2 lambda))).
double laplace_transform_level(double level, const BesselParams& params, double lambda);

/// Integral of a nonnegative density over [lo, hi] (hi may be +inf). Tanh-sinh
/// on finite ranges, exp-sinh on half lines; absolute tolerance about 1e-10.
double integrate_density(const std::function<double(double)>& density, double lo, double hi);

struct FirstFamily {
  double a;
};
struct SecondFamily {
  double a;
  double s;
};
struct LaplaceFamily {
  double a;
  double lambda;
};

/// One of the three closed-form boundary families together with its law.
class HittingLaw {
 public:
  using Family = std::variant<FirstFamily, SecondFamily, LaplaceFamily>;

  HittingLaw(Family family, BesselParams params);

  const Family& family() const { return family_; }
  const BesselParams& params() const { return params_; }
  /// Interval of validity of the boundary, [0, end] with end possibly +inf.
  std::pair<double, double> t_domain() const { return {0.0, domain_end_}; }

  double boundary(double t) const;
  /// Hitting density; 0 outside t_domain.
  double density(double t) const;
  /// P(tau <= t). Closed form for the first family, quadrature of the density otherwise.
  double cdf(double t) const;
  /// Total mass of the density over t_domain.
  double mass() const;

 private:
  Family family_;
  BesselParams params_;
  double domain_end_;
};

}  // namespace woms

#pragma once

#include <functional>
#include <variant>

#include "woms/bessel_params.hpp"

namespace woms {

// Moving-boundary functions obtained from the method of images, and the
// image-constant rules that keep each moving sphere inside the target domain.
//
// Log arguments within 1e-12 of 1, or below 1 through rounding, are clamped
// to 1; the boundary is 0 there.

/// Lifetime of the moving sphere psi_a: [a / (Gamma(nu+1) 2^nu)]^{1/(nu+1)}.
double t_max(double a, const BesselParams& params);

/// First image boundary psi_a(t) = sqrt(2t log(a / (Gamma(nu+1) t^{nu+1} 2^nu))).
/// Defined on [0, t_max(a)]; throws DomainError beyond t_max * (1 + 1e-12).
double psi(double a, const BesselParams& params, double t);

/// max_t psi_a(t), attained at t_max(a) / e.
double psi_sup(double a, const BesselParams& params);

/// Second image boundary, from the measure p_0(s, y) dy.
double psi_second(double a, double s, const BesselParams& params, double t);
/// End of the domain of psi_second: +inf when a >= 1.
double psi_second_horizon(double a, double s, const BesselParams& params);

/// Third image boundary (Laplace-transform construction).
double psi_laplace(double a, double lambda, const BesselParams& params, double t);
/// End of the domain of psi_laplace: +inf when lambda is at or above the threshold
/// (1/2) (2^nu Gamma(nu+1) / a)^{1/(nu+1)}.
double psi_laplace_horizon(double a, double lambda, const BesselParams& params);
/// The square-rooted factor of psi_laplace and of its hitting density.
double laplace_root_term(double a, double lambda, const BesselParams& params, double t);

/// F_nu(r, u) = (1/2) (e r / (nu+1))^{nu+1} Gamma(nu+1) e^{-u/2}: with a = F_nu(r, u),
/// psi_a(t) <= sqrt(r - u t) over the lifetime of psi_a.
double f_nu(double r, double u, const BesselParams& params);

/// Image constant around a point of squared radius chi inside the level l.
/// sup psi at this constant equals gamma * (l - sqrt(chi)).
double image_constant_level(double chi, double level, double gamma, const BesselParams& params);

/// A constant level l > 0.
struct ConstantLevel {
  double level;
};

/// A decreasing curve with l(0) > 0 and l'(t) >= -delta_min.
struct DecreasingCurve {
  std::function<double(double)> level;
  double delta_min;
};

/// The square-root curve sqrt(beta0 - beta1 t), defined for t <= beta0 / beta1.
struct SquareRoot {
  double beta0;
  double beta1;
};

using BoundarySpec = std::variant<ConstantLevel, DecreasingCurve, SquareRoot>;

/// Value of the boundary at time t (0 past the root of a square-root curve).
double boundary_value(const BoundarySpec& boundary, double t);
/// Throws ConfigError if the boundary violates its invariants.
void validate_boundary(const BoundarySpec& boundary);

double square_root_level(const SquareRoot& curve, double t);

/// kappa = 2^nu Gamma(nu+1) / (5^{nu+1} L^{2nu+2}) with L = max(l(0), delta_min, sqrt(nu+1)).
double decreasing_curve_kappa(double level0, double delta_min, const BesselParams& params);

/// kappa * (l(elapsed) - sqrt(chi))^{2(nu+1)}.
double image_constant_decreasing(double chi, double elapsed, const DecreasingCurve& curve,
                                 double kappa, const BesselParams& params);

/// kappa * F_nu((l(elapsed) - sqrt(chi))^2, beta1 (1 - sqrt(chi) / l(elapsed))) for the
/// square-root curve. Throws DomainError when l(elapsed) <= sqrt(chi).
double image_constant_sqrt(double chi, double elapsed, const SquareRoot& curve, double kappa,
                           const BesselParams& params);

}  // namespace woms

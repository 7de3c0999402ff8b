#pragma once

// Elementary special functions used by the hitting-time densities, the
// samplers and the validation oracles. All functions are pure and reentrant.

namespace woms {

/// log Gamma(x) for x > 0 (Lanczos approximation, reflection below 0.5).
/// Throws DomainError for x <= 0.
double ln_gamma(double x);

/// Modified Bessel function of the first kind I_nu(z) by its power series.
///
/// The series is truncated as soon as a term drops below 1e-16 of the
/// partial sum, with a hard cap of 200 terms, so results are bit-stable.
/// Requires nu >= -1/2 and z >= 0; intended for z <= 50.
double bessel_i(double nu, double z);

/// log I_nu(z): the power series up to z = 50, the large-argument expansion
/// e^z / sqrt(2 pi z) (1 - (4nu^2 - 1)/(8z) + ...) beyond, so that it stays
/// finite where I_nu itself overflows.
double log_bessel_i(double nu, double z);

/// Regularized upper incomplete gamma function Q(alpha, x) = Gamma(alpha, x) / Gamma(alpha).
///
/// Uses the lower series for x < alpha + 1 and a modified Lentz continued
/// fraction otherwise.
double reg_upper_gamma_q(double alpha, double x);

/// Regularized lower incomplete gamma function P(alpha, x) = 1 - Q(alpha, x).
double reg_lower_gamma_p(double alpha, double x);

}  // namespace woms

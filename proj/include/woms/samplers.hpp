#pragma once

#include <vector>

#include "woms/bessel_params.hpp"
#include "woms/rng.hpp"

namespace woms {

/// Gamma(alpha, beta) variate (density z^{alpha-1} e^{-z/beta}) for 2*alpha in N*.
///
/// Integer alpha is the Erlang case -beta * log(U_1 ... U_alpha); for
/// half-integer alpha a term beta * N^2 / 2 is added to the floor(alpha)
/// product. Throws DomainError for any other alpha or beta <= 0.
double sample_gamma_half_integer(double alpha, double beta, RngStream& rng);

/// Exact draw of the first time a Bessel process from 0 meets the boundary psi_a.
///
/// Returns t_max(a) * exp(-Z) with Z ~ Gamma(nu + 2, 1 / (nu + 1)).
double sample_first_passage_psi(double a, const BesselParams& params, RngStream& rng);

/// Uniform point on the unit sphere in R^dimension (normalized gaussian vector).
/// For dimension 1 this is a uniform sign.
std::vector<double> sample_unit_sphere(int dimension, RngStream& rng);

/// First coordinate of sample_unit_sphere(dimension, rng), without allocating.
/// Consumes the same draws as sample_unit_sphere.
double sample_sphere_first_coordinate(int dimension, RngStream& rng);

}  // namespace woms

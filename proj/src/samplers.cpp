#include "woms/samplers.hpp"

#include <cmath>
#include <string>

#include "woms/boundaries.hpp"
#include "woms/errors.hpp"

namespace woms {

double sample_gamma_half_integer(double alpha, double beta, RngStream& rng) {
  const double twice = 2.0 * alpha;
  if (!(alpha > 0.0) || twice != std::floor(twice)) {
    throw DomainError("sample_gamma_half_integer: 2*alpha must be a positive integer (got alpha=" +
                      std::to_string(alpha) + ")");
  }
  if (!(beta > 0.0)) {
    throw DomainError("sample_gamma_half_integer: beta must be positive");
  }
  const int uniforms = static_cast<int>(std::floor(alpha));
  double product = 1.0;
  for (int i = 0; i < uniforms; ++i) product *= rng.next_uniform();
  double z = uniforms > 0 ? -beta * std::log(product) : 0.0;
  if (alpha != std::floor(alpha)) {
    const double g = rng.next_gaussian();
    z += 0.5 * beta * g * g;
  }
  return z;
}

double sample_first_passage_psi(double a, const BesselParams& params, RngStream& rng) {
  const double lifetime = t_max(a, params);
  const double nu = params.nu();
  const double z = sample_gamma_half_integer(nu + 2.0, 1.0 / (nu + 1.0), rng);
  return lifetime * std::exp(-z);
}

std::vector<double> sample_unit_sphere(int dimension, RngStream& rng) {
  if (dimension < 1) throw DomainError("sample_unit_sphere: dimension must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(dimension));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& x : v) {
      x = rng.next_gaussian();
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  if (dimension == 1) {
    v[0] = v[0] > 0.0 ? 1.0 : -1.0;
    return v;
  }
  const double norm = std::sqrt(norm2);
  for (double& x : v) x /= norm;
  return v;
}

double sample_sphere_first_coordinate(int dimension, RngStream& rng) {
  if (dimension < 1) throw DomainError("sample_unit_sphere: dimension must be >= 1");
  double first = 0.0;
  double norm2 = 0.0;
  do {
    first = rng.next_gaussian();
    norm2 = first * first;
    for (int i = 1; i < dimension; ++i) {
      const double x = rng.next_gaussian();
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  if (dimension == 1) return first > 0.0 ? 1.0 : -1.0;
  return first / std::sqrt(norm2);
}

}  // namespace woms

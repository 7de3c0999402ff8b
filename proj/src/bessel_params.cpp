#include "woms/bessel_params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "woms/errors.hpp"
#include "woms/special_functions.hpp"

namespace woms {

BesselParams::BesselParams(int dimension)
    : dimension_(dimension),
      nu_(0.5 * dimension - 1.0),
      nu_floor_(static_cast<int>(std::floor(nu_))),
      nu_frac_(nu_ - std::floor(nu_)),
      gamma_nu1_(std::exp(ln_gamma(nu_ + 1.0))),
      log_norm_(ln_gamma(nu_ + 1.0) + nu_ * std::numbers::ln2) {}

BesselParams BesselParams::from_dimension(int dimension) {
  if (dimension < 1) {
    throw ConfigError("dimension: must be a positive integer (got " + std::to_string(dimension) +
                      ")");
  }
  return BesselParams(dimension);
}

BesselParams BesselParams::from_index(double nu) {
  const double twice = 2.0 * (nu + 1.0);
  const double rounded = std::round(twice);
  if (!(std::abs(twice - rounded) < 1e-9) || rounded < 1.0) {
    throw ConfigError("nu: 2*(nu+1) must be a positive integer (got nu=" + std::to_string(nu) +
                      ")");
  }
  return BesselParams(static_cast<int>(rounded));
}

}  // namespace woms

#include "woms/euler.hpp"

#include <cmath>
#include <string>

#include "woms/errors.hpp"

namespace woms {

namespace {

void check_grid(double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive (got " + std::to_string(dt) + ")");
}

void check_dimension(int dimension) {
  if (dimension < 1) throw ConfigError("dim: must be a positive integer");
}

}  // namespace

BrownianExit euler_bm_exit(int dimension, double level, double dt, RngStream& rng) {
  check_dimension(dimension);
  check_grid(dt);
  if (!(level > 0.0)) throw ConfigError("level: must be positive");
  const double sd = std::sqrt(dt);
  const double level2 = level * level;
  BrownianExit exit;
  exit.position.assign(static_cast<std::size_t>(dimension), 0.0);
  double norm2 = 0.0;
  while (norm2 < level2) {
    norm2 = 0.0;
    for (double& x : exit.position) {
      x += sd * rng.next_gaussian();
      norm2 += x * x;
    }
    ++exit.steps;
  }
  exit.time = static_cast<double>(exit.steps) * dt;
  return exit;
}

EulerOutcome euler_bessel_curved(int dimension, const std::function<double(double)>& boundary,
                                 double dt, double horizon, RngStream& rng,
                                 double start_radius) {
  check_dimension(dimension);
  check_grid(dt);
  if (!(horizon > 0.0)) throw ConfigError("horizon: must be positive");
  if (!(start_radius >= 0.0)) throw ConfigError("x0: start radius must be >= 0");
  const double sd = std::sqrt(dt);
  std::vector<double> x(static_cast<std::size_t>(dimension), 0.0);
  x[0] = start_radius;
  EulerOutcome out;
  const auto max_steps = static_cast<std::int64_t>(std::floor(horizon / dt + 1e-9));
  for (std::int64_t k = 1; k <= max_steps; ++k) {
    double norm2 = 0.0;
    for (double& xi : x) {
      xi += sd * rng.next_gaussian();
      norm2 += xi * xi;
    }
    const double t = static_cast<double>(k) * dt;
    const double level = boundary(t);
    out.steps = k;
    if (level <= 0.0 || norm2 >= level * level) {
      out.time = t;
      out.position = std::sqrt(norm2);
      return out;
    }
    out.position = std::sqrt(norm2);
  }
  return out;
}

}  // namespace woms

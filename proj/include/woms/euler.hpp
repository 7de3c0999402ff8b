#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "woms/rng.hpp"

namespace woms {

// Discretized reference schemes. Every scheme monitors the boundary only at
// grid times k * dt, so reported times are multiples of dt.

/// Grid hitting time; empty when the path is still inside at the horizon.
struct EulerOutcome {
  std::optional<double> time;
  double position = 0.0;
  std::int64_t steps = 0;
};

struct BrownianExit {
  double time = 0.0;
  std::vector<double> position;
  std::int64_t steps = 0;
};

inline constexpr double kDefaultEulerDt = 1e-4;

/// Brownian motion in R^dimension started at the origin, stopped at the first
/// grid time with |B| >= level.
BrownianExit euler_bm_exit(int dimension, double level, double dt, RngStream& rng);

/// Norm of a Brownian motion in R^dimension started at (start_radius, 0, ...),
/// stopped at the first positive grid time with |B_t| >= boundary(t).
EulerOutcome euler_bessel_curved(int dimension, const std::function<double(double)>& boundary,
                                 double dt, double horizon, RngStream& rng,
                                 double start_radius = 0.0);

}  // namespace woms

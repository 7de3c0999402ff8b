#include "woms/woms_engine.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "woms/errors.hpp"
#include "woms/samplers.hpp"

namespace woms {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::a1: return "a1";
    case Algorithm::a2: return "a2";
    case Algorithm::a3: return "a3";
    case Algorithm::a4: return "a4";
    case Algorithm::cir: return "cir";
    case Algorithm::euler_bm: return "euler-bm";
    case Algorithm::euler_cir: return "euler-cir";
    case Algorithm::euler_bessel_curve: return "euler-bessel-curve";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::a1, Algorithm::a2, Algorithm::a3, Algorithm::a4, Algorithm::cir,
                 Algorithm::euler_bm, Algorithm::euler_cir, Algorithm::euler_bessel_curve}) {
    if (to_string(a) == name) return a;
  }
  throw ConfigError("algorithm: unknown value '" + std::string(name) + "'");
}

namespace {

void check_eps(double eps) {
  if (!(eps >= kMinEpsilon)) {
    throw ConfigError("eps: must be >= 1e-12 (got " + std::to_string(eps) + ")");
  }
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ConfigError("gamma: must lie in (0, 1) (got " + std::to_string(gamma) + ")");
  }
}

void check_start(double start_radius) {
  if (!(start_radius >= 0.0)) throw ConfigError("x0: start radius must be >= 0");
}

// Shared driver for A2-A4. `stop` decides whether a state ends the walk;
// `image_constant` is the algorithm's rule for the next sphere.
template <class StopRule, class ImageRule>
HittingSample drive(const BesselParams& params, double start_radius, StopRule&& stop,
                    ImageRule&& image_constant, Algorithm tag, RngStream& rng,
                    const WalkOptions& options) {
  WalkState state;
  state.chi = start_radius * start_radius;
  if (stop(state)) {
    state.stopped = true;
  } else {
    state.image_constant = image_constant(state);
  }
  while (!state.stopped) {
    if (state.n >= options.step_cap) {
      throw StepCapExceeded("walk exceeded the step cap of " + std::to_string(options.step_cap));
    }
    WalkState next = step_a2(state, params, rng);
    if (stop(next)) {
      next.stopped = true;
    } else {
      next.image_constant = image_constant(next);
    }
    if (options.observer) options.observer(state, next);
    state = next;
  }
  return HittingSample{state.elapsed, std::sqrt(state.chi), state.n, tag};
}

}  // namespace

WalkState step_a2(const WalkState& state, const BesselParams& params, RngStream& rng) {
  const double nu1 = params.nu() + 1.0;
  const double lifetime = t_max(state.image_constant, params);
  const double z = sample_gamma_half_integer(params.nu() + 2.0, 1.0 / nu1, rng);
  const double xi = lifetime * std::exp(-z);
  // psi_A(xi)^2 = 2 xi log(A / (Gamma(nu+1) 2^nu xi^{nu+1})) = 2 xi (nu+1) z
  const double radius = std::sqrt(2.0 * xi * nu1 * z);
  const double direction = sample_sphere_first_coordinate(params.dimension(), rng);

  WalkState next = state;
  next.n = state.n + 1;
  next.elapsed = state.elapsed + xi;
  next.last_xi = xi;
  next.chi = std::max(
      state.chi + 2.0 * direction * std::sqrt(state.chi) * radius + radius * radius, 0.0);
  return next;
}

PlanarHit run_a1(const PlanarLevelWalk& walk, RngStream& rng, const WalkOptions& options) {
  if (!(walk.level > 0.0)) throw ConfigError("level: must be positive");
  check_eps(walk.eps);
  check_gamma(walk.gamma);

  PlanarWalkState state;
  state.position = walk.start;
  auto norm = [](const std::array<double, 2>& x) { return std::hypot(x[0], x[1]); };
  auto image_constant = [&](const std::array<double, 2>& x) {
    const double gap = walk.level - norm(x);
    return walk.gamma * walk.gamma * gap * gap * std::numbers::e / 2.0;
  };

  bool stopped = norm(state.position) >= walk.level - walk.eps;
  if (!stopped) state.image_constant = image_constant(state.position);
  while (!stopped) {
    if (state.n >= options.step_cap) {
      throw StepCapExceeded("walk exceeded the step cap of " + std::to_string(options.step_cap));
    }
    const double u = rng.next_uniform();
    const double v = rng.next_uniform();
    const double w = rng.next_uniform();
    const double theta = state.image_constant * u * v;
    // psi_A(theta) = sqrt(2 theta log(A / theta)) with A / theta = 1 / (u v)
    const double radius = std::sqrt(-2.0 * theta * std::log(u * v));
    const double angle = 2.0 * std::numbers::pi * w;

    PlanarWalkState next = state;
    next.n = state.n + 1;
    next.elapsed = state.elapsed + theta;
    next.position = {state.position[0] + radius * std::cos(angle),
                     state.position[1] + radius * std::sin(angle)};
    stopped = norm(next.position) >= walk.level - walk.eps;
    if (!stopped) next.image_constant = image_constant(next.position);
    if (options.planar_observer) options.planar_observer(state, next);
    state = next;
  }
  PlanarHit hit;
  hit.sample = HittingSample{state.elapsed, norm(state.position), state.n, Algorithm::a1};
  hit.position = state.position;
  return hit;
}

HittingSample run_a2(const BesselParams& params, const LevelWalk& walk, RngStream& rng,
                     const WalkOptions& options) {
  if (!(walk.level > 0.0)) throw ConfigError("level: must be positive");
  check_eps(walk.eps);
  check_gamma(walk.gamma);
  check_start(walk.start_radius);
  const double threshold = walk.level - walk.eps;
  return drive(
      params, walk.start_radius,
      [threshold](const WalkState& s) { return std::sqrt(s.chi) >= threshold; },
      [&](const WalkState& s) {
        return image_constant_level(s.chi, walk.level, walk.gamma, params);
      },
      Algorithm::a2, rng, options);
}

HittingSample run_a3(const BesselParams& params, const DecreasingCurve& curve, double eps,
                     RngStream& rng, double start_radius, const WalkOptions& options) {
  validate_boundary(curve);
  check_eps(eps);
  check_start(start_radius);
  const double kappa = decreasing_curve_kappa(curve.level(0.0), curve.delta_min, params);
  return drive(
      params, start_radius,
      [&](const WalkState& s) { return curve.level(s.elapsed) - std::sqrt(s.chi) <= eps; },
      [&](const WalkState& s) {
        return image_constant_decreasing(s.chi, s.elapsed, curve, kappa, params);
      },
      Algorithm::a3, rng, options);
}

HittingSample run_a4(const BesselParams& params, const SquareRoot& curve, double eps,
                     double kappa, RngStream& rng, double start_radius,
                     const WalkOptions& options) {
  validate_boundary(curve);
  check_eps(eps);
  check_start(start_radius);
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw ConfigError("kappa: must lie in (0, 1) (got " + std::to_string(kappa) + ")");
  }
  return drive(
      params, start_radius,
      [&](const WalkState& s) {
        return square_root_level(curve, s.elapsed) - std::sqrt(s.chi) <= eps;
      },
      [&](const WalkState& s) {
        return image_constant_sqrt(s.chi, s.elapsed, curve, kappa, params);
      },
      Algorithm::a4, rng, options);
}

std::int64_t level_step_lower_bound(double initial_gap, double eps, double gamma) {
  if (initial_gap <= eps) return 0;
  return static_cast<std::int64_t>(
      std::ceil(std::log(initial_gap / eps) / std::log(1.0 / (1.0 - gamma))));
}

}  // namespace woms

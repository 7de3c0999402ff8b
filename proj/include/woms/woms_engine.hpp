#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string_view>

#include "woms/bessel_params.hpp"
#include "woms/boundaries.hpp"
#include "woms/rng.hpp"

namespace woms {

enum class Algorithm { a1, a2, a3, a4, cir, euler_bm, euler_cir, euler_bessel_curve };

std::string_view to_string(Algorithm algorithm);
/// Accepts "a1".."a4", "cir", "euler-bm", "euler-cir", "euler-bessel-curve".
Algorithm parse_algorithm(std::string_view name);

/// State of the radial walk: step count, elapsed time, squared radius and
/// the image constant that parameterizes the next moving sphere.
struct WalkState {
  std::int64_t n = 0;
  double elapsed = 0.0;
  double chi = 0.0;
  double image_constant = 0.0;
  /// Lifetime of the sphere used by the last step.
  double last_xi = 0.0;
  bool stopped = false;
};

/// State of the planar walk (A1).
struct PlanarWalkState {
  std::int64_t n = 0;
  double elapsed = 0.0;
  std::array<double, 2> position{0.0, 0.0};
  double image_constant = 0.0;
};

struct HittingSample {
  double time = 0.0;
  double radial_position = 0.0;
  std::int64_t steps = 0;
  Algorithm algorithm = Algorithm::a2;
};

struct PlanarHit {
  HittingSample sample;
  std::array<double, 2> position{0.0, 0.0};
};

struct WalkOptions {
  std::int64_t step_cap = 10'000'000;
  /// Called once per step with the state before and after it.
  std::function<void(const WalkState&, const WalkState&)> observer;
  std::function<void(const PlanarWalkState&, const PlanarWalkState&)> planar_observer;
};

inline constexpr double kMinEpsilon = 1e-12;
inline constexpr double kDefaultGamma = 0.9;
inline constexpr double kDefaultKappa = 0.9;

/// Walk towards a constant level.
struct LevelWalk {
  double level = 1.0;
  double eps = 1e-3;
  double gamma = kDefaultGamma;
  double start_radius = 0.0;
};

/// Planar walk towards the circle of radius `level` (A1).
struct PlanarLevelWalk {
  double level = 1.0;
  double eps = 1e-3;
  double gamma = kDefaultGamma;
  std::array<double, 2> start{0.0, 0.0};
};

/// One moving-sphere step from `state` with its current image constant.
///
/// Draws the sphere lifetime xi = t_max(A) e^{-Z}, Z ~ Gamma(nu+2, 1/(nu+1)),
/// advances the elapsed time by xi and moves the squared radius to
/// chi + 2 pi_1(V) sqrt(chi) psi_A(xi) + psi_A(xi)^2 for V uniform on the
/// unit sphere. The image constant of the result is left unchanged; each
/// algorithm applies its own rule after the step.
WalkState step_a2(const WalkState& state, const BesselParams& params, RngStream& rng);

/// Algorithm A1: planar walk on moving spheres for dimension 2.
/// Returns time 0 and no steps when the start is already within eps of the circle.
PlanarHit run_a1(const PlanarLevelWalk& walk, RngStream& rng, const WalkOptions& options = {});

/// Algorithm A2: hitting time of a level in any positive integer dimension.
HittingSample run_a2(const BesselParams& params, const LevelWalk& walk, RngStream& rng,
                     const WalkOptions& options = {});

/// Algorithm A3: hitting time of a decreasing curve with bounded derivative.
HittingSample run_a3(const BesselParams& params, const DecreasingCurve& curve, double eps,
                     RngStream& rng, double start_radius = 0.0, const WalkOptions& options = {});

/// Algorithm A4: hitting time of the curve sqrt(beta0 - beta1 t).
HittingSample run_a4(const BesselParams& params, const SquareRoot& curve, double eps,
                     double kappa, RngStream& rng, double start_radius = 0.0,
                     const WalkOptions& options = {});

/// ceil(log(d0 / eps) / log(1 / (1 - gamma))): no level walk can stop sooner.
std::int64_t level_step_lower_bound(double initial_gap, double eps, double gamma);

}  // namespace woms

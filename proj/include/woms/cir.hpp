#pragma once

#include <vector>

#include "woms/bessel_params.hpp"
#include "woms/boundaries.hpp"
#include "woms/euler.hpp"
#include "woms/rng.hpp"
#include "woms/woms_engine.hpp"

namespace woms {

// Level hitting for dX = (a + bX) dt + c sqrt(|X|) dB through the time change
// X_t = e^{bt} Y(c^2 (1 - e^{-bt}) / 4b), Y a squared Bessel process of
// dimension 4a / c^2.

struct CirParams {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double x0 = 0.0;
  double level = 1.0;

  double dimension() const { return 4.0 * a / (c * c); }
};

/// Checks the basic SDE constraints (a >= 0, c > 0, x0 >= 0, level > 0).
void validate_cir(const CirParams& params);

/// Additionally requires b > 0 and an integer dimension 4a / c^2 >= 1.
/// Returns the Bessel parameters of the associated process.
BesselParams validate_cir_for_woms(const CirParams& params);

/// The square-root curve sqrt(l (1 - 4bt / c^2)): beta0 = l, beta1 = 4bl / c^2.
SquareRoot cir_boundary(const CirParams& params);

/// Bessel clock to CIR clock: -(1/b) log(1 - 4bt / c^2), for 0 <= t < c^2 / 4b.
double time_change_eta(const CirParams& params, double t);

/// CIR clock to Bessel clock: c^2 (1 - e^{-bt}) / 4b.
double time_change_eta_inverse(const CirParams& params, double t);

struct CirHit {
  double time = 0.0;
  /// The underlying Bessel-clock sample from the square-root walk.
  HittingSample bessel;
};

/// Runs the square-root walk from sqrt(x0) and maps its time through eta.
CirHit sample_cir_hitting(const CirParams& params, double eps, double kappa, RngStream& rng,
                          const WalkOptions& options = {});

/// Explicit Euler scheme for the SDE with |X| under the square root; first grid
/// time with X >= level, censored at the horizon.
EulerOutcome euler_cir(const CirParams& params, double dt, double horizon, RngStream& rng);

/// Euler value of X at time t without stopping.
double euler_cir_marginal(const CirParams& params, double t, double dt, RngStream& rng);

/// X_t sampled through the time change: e^{bt} |sqrt(x0) e_1 + W_s|^2 with
/// s = c^2 (1 - e^{-bt}) / 4b and W a Brownian motion in R^dimension.
double cir_marginal_via_bessel(const CirParams& params, double t, RngStream& rng);

/// Censoring horizon for the Euler baseline: 20 times the crossing time of the
/// noiseless ODE (falls back to 20 when the ODE never crosses).
double default_cir_horizon(const CirParams& params);

struct SandwichPoint {
  double t = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Bounds on P(T_l <= t) from Bessel-clock samples:
/// (1 - eps / sqrt(2 alpha pi)) P(Xi <= s(t) - alpha) <= P(T_l <= t) <= P(Xi <= s(t)),
/// with s the inverse time change and empirical probabilities.
std::vector<SandwichPoint> cir_sandwich(const CirParams& params,
                                        const std::vector<double>& bessel_times, double eps,
                                        double alpha, const std::vector<double>& t_grid);

}  // namespace woms

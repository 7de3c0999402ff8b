#include "woms/cir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "woms/errors.hpp"

namespace woms {

void validate_cir(const CirParams& p) {
  if (!(p.a >= 0.0)) throw ConfigError("a: must be >= 0");
  if (!std::isfinite(p.b)) throw ConfigError("b: must be finite");
  if (!(p.c > 0.0)) throw ConfigError("c: must be positive");
  if (!(p.x0 >= 0.0)) throw ConfigError("x0: must be >= 0");
  if (!(p.level > 0.0)) throw ConfigError("level: must be positive");
}

BesselParams validate_cir_for_woms(const CirParams& p) {
  validate_cir(p);
  if (!(p.b > 0.0)) {
    throw ConfigError("b: the walk route needs b > 0 so that the boundary decreases (got " +
                      std::to_string(p.b) + ")");
  }
  const double delta = p.dimension();
  const double rounded = std::round(delta);
  if (rounded < 1.0 || std::abs(delta - rounded) > 1e-9 * std::max(1.0, delta)) {
    throw ConfigError("a, c: 4a/c^2 must be a positive integer (got " + std::to_string(delta) +
                      ")");
  }
  return BesselParams::from_dimension(static_cast<int>(rounded));
}

SquareRoot cir_boundary(const CirParams& p) {
  return SquareRoot{p.level, 4.0 * p.b * p.level / (p.c * p.c)};
}

double time_change_eta(const CirParams& p, double t) {
  if (!(p.b > 0.0)) throw DomainError("time_change_eta: b must be positive");
  const double root = p.c * p.c / (4.0 * p.b);
  if (!(t >= 0.0) || !(t < root)) {
    throw DomainError("time_change_eta: t must lie in [0, c^2/4b) (got " + std::to_string(t) +
                      ")");
  }
  return -std::log1p(-4.0 * p.b * t / (p.c * p.c)) / p.b;
}

double time_change_eta_inverse(const CirParams& p, double t) {
  if (!(p.b > 0.0)) throw DomainError("time_change_eta_inverse: b must be positive");
  if (!(t >= 0.0)) throw DomainError("time_change_eta_inverse: t must be >= 0");
  return -p.c * p.c * std::expm1(-p.b * t) / (4.0 * p.b);
}

CirHit sample_cir_hitting(const CirParams& p, double eps, double kappa, RngStream& rng,
                          const WalkOptions& options) {
  const BesselParams params = validate_cir_for_woms(p);
  CirHit hit;
  if (p.x0 >= p.level) {
    hit.bessel = HittingSample{0.0, std::sqrt(p.x0), 0, Algorithm::cir};
    return hit;
  }
  hit.bessel = run_a4(params, cir_boundary(p), eps, kappa, rng, std::sqrt(p.x0), options);
  hit.bessel.algorithm = Algorithm::cir;
  hit.time = time_change_eta(p, hit.bessel.time);
  return hit;
}

EulerOutcome euler_cir(const CirParams& p, double dt, double horizon, RngStream& rng) {
  validate_cir(p);
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  if (!(horizon > 0.0)) throw ConfigError("horizon: must be positive");
  EulerOutcome out;
  double x = p.x0;
  out.position = x;
  if (x >= p.level) {
    out.time = 0.0;
    return out;
  }
  const double sd = std::sqrt(dt);
  const auto max_steps = static_cast<std::int64_t>(std::floor(horizon / dt + 1e-9));
  for (std::int64_t k = 1; k <= max_steps; ++k) {
    x += (p.a + p.b * x) * dt + p.c * std::sqrt(std::abs(x)) * sd * rng.next_gaussian();
    out.steps = k;
    out.position = x;
    if (x >= p.level) {
      out.time = static_cast<double>(k) * dt;
      return out;
    }
  }
  return out;
}

double euler_cir_marginal(const CirParams& p, double t, double dt, RngStream& rng) {
  validate_cir(p);
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  const double sd = std::sqrt(dt);
  const auto steps = static_cast<std::int64_t>(std::llround(t / dt));
  double x = p.x0;
  for (std::int64_t k = 0; k < steps; ++k) {
    x += (p.a + p.b * x) * dt + p.c * std::sqrt(std::abs(x)) * sd * rng.next_gaussian();
  }
  return x;
}

double cir_marginal_via_bessel(const CirParams& p, double t, RngStream& rng) {
  const BesselParams params = validate_cir_for_woms(p);
  const double s = time_change_eta_inverse(p, t);
  const double sd = std::sqrt(s);
  double norm2 = 0.0;
  for (int i = 0; i < params.dimension(); ++i) {
    const double xi = (i == 0 ? std::sqrt(p.x0) : 0.0) + sd * rng.next_gaussian();
    norm2 += xi * xi;
  }
  return std::exp(p.b * t) * norm2;
}

double default_cir_horizon(const CirParams& p) {
  validate_cir(p);
  if (p.x0 >= p.level) return 1.0;
  double crossing = std::numeric_limits<double>::infinity();
  if (p.b == 0.0) {
    if (p.a > 0.0) crossing = (p.level - p.x0) / p.a;
  } else {
    const double from = p.a + p.b * p.x0;
    const double to = p.a + p.b * p.level;
    if (from > 0.0 && to > 0.0) crossing = std::log(to / from) / p.b;
  }
  return std::isfinite(crossing) ? 20.0 * crossing : 20.0;
}

std::vector<SandwichPoint> cir_sandwich(const CirParams& p,
                                        const std::vector<double>& bessel_times, double eps,
                                        double alpha, const std::vector<double>& t_grid) {
  if (!(alpha > 0.0)) throw ConfigError("alpha: must be positive");
  std::vector<double> sorted = bessel_times;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto ecdf = [&](double x) {
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) -
                               sorted.begin()) /
           n;
  };
  const double factor = std::max(1.0 - eps / std::sqrt(2.0 * alpha * std::numbers::pi), 0.0);
  std::vector<SandwichPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const double s = time_change_eta_inverse(p, t);
    out.push_back(SandwichPoint{t, factor * ecdf(s - alpha), ecdf(s)});
  }
  return out;
}

}  // namespace woms

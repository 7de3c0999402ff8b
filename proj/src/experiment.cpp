#include "woms/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "woms/errors.hpp"
#include "woms/euler.hpp"
#include "woms/hitting_laws.hpp"
#include "woms/parallel.hpp"

namespace woms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kHistogramBins = 40;
constexpr int kAngleBins = 36;
constexpr double kTestLevel = 1e-3;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError(field + ": " + message);
}

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) fail(field, message);
}

// One replica with the extra per-run value some checks need: the exit angle
// for planar runs, the Bessel-clock time for the CIR walk.
struct Replica {
  SampleRecord record;
  double aux = 0.0;
};

CirParams cir_params(const ExperimentConfig& c) {
  return CirParams{c.cir_a, c.cir_b, c.cir_c, c.x0, c.level};
}

double resolved_delta_min(const ExperimentConfig& c) {
  return std::isnan(c.delta_min) ? c.slope : c.delta_min;
}

std::function<double(double)> baseline_curve(const ExperimentConfig& c) {
  switch (c.curve) {
    case CurveKind::level: return [l = c.level](double) { return l; };
    case CurveKind::linear:
      return [l = c.level, k = c.slope](double t) { return std::max(l - k * t, 0.0); };
    case CurveKind::sqrt:
      return [curve = SquareRoot{c.beta0, c.beta1}](double t) {
        return square_root_level(curve, t);
      };
  }
  return {};
}

Replica run_one(const ExperimentConfig& c, std::int64_t k, RngStream& rng) {
  WalkOptions options;
  options.step_cap = c.step_cap;
  Replica r;
  r.record.sample_index = k;
  auto from_sample = [&](const HittingSample& s) {
    r.record.time = s.time;
    r.record.radial_position = s.radial_position;
    r.record.steps = s.steps;
  };
  switch (c.algorithm) {
    case Algorithm::a1: {
      const PlanarHit hit = run_a1(PlanarLevelWalk{c.level, c.eps, c.gamma, {c.x0, 0.0}}, rng,
                                   options);
      from_sample(hit.sample);
      r.aux = std::atan2(hit.position[1], hit.position[0]);
      break;
    }
    case Algorithm::a2:
      from_sample(run_a2(BesselParams::from_dimension(c.dimension),
                         LevelWalk{c.level, c.eps, c.gamma, c.x0}, rng, options));
      break;
    case Algorithm::a3: {
      DecreasingCurve curve{[l = c.level, s = c.slope](double t) { return l - s * t; },
                            resolved_delta_min(c)};
      from_sample(run_a3(BesselParams::from_dimension(c.dimension), curve, c.eps, rng, c.x0,
                         options));
      break;
    }
    case Algorithm::a4:
      from_sample(run_a4(BesselParams::from_dimension(c.dimension),
                         SquareRoot{c.beta0, c.beta1}, c.eps, c.kappa, rng, c.x0, options));
      break;
    case Algorithm::cir: {
      const CirParams p = cir_params(c);
      const CirHit hit = sample_cir_hitting(p, c.eps, c.kappa, rng, options);
      r.record.time = hit.time;
      r.record.steps = hit.bessel.steps;
      const double chi = hit.bessel.radial_position * hit.bessel.radial_position;
      r.record.radial_position = std::exp(p.b * hit.time) * chi;
      r.aux = hit.bessel.time;
      break;
    }
    case Algorithm::euler_bm: {
      const BrownianExit exit = euler_bm_exit(c.dimension, c.level, c.dt, rng);
      r.record.time = exit.time;
      r.record.steps = exit.steps;
      double norm2 = 0.0;
      for (double x : exit.position) norm2 += x * x;
      r.record.radial_position = std::sqrt(norm2);
      if (exit.position.size() == 2) r.aux = std::atan2(exit.position[1], exit.position[0]);
      break;
    }
    case Algorithm::euler_cir: {
      const EulerOutcome out = euler_cir(cir_params(c), c.dt, effective_horizon(c), rng);
      r.record.time = out.time.value_or(kInf);
      r.record.radial_position = out.position;
      r.record.steps = out.steps;
      break;
    }
    case Algorithm::euler_bessel_curve: {
      const EulerOutcome out = euler_bessel_curved(c.dimension, baseline_curve(c), c.dt,
                                                   effective_horizon(c), rng, c.x0);
      r.record.time = out.time.value_or(kInf);
      r.record.radial_position = out.position;
      r.record.steps = out.steps;
      break;
    }
  }
  return r;
}

CheckResult fraction_check(std::string name, std::int64_t good, std::int64_t total) {
  CheckResult check;
  check.name = std::move(name);
  check.statistic = total > 0 ? static_cast<double>(good) / static_cast<double>(total) : 1.0;
  check.reference = 1.0;
  check.threshold = 1.0;
  check.passed = good == total;
  return check;
}

CheckResult laplace_check(const std::vector<Replica>& runs, double level,
                          const BesselParams& params) {
  std::vector<double> weights;
  weights.reserve(runs.size());
  for (const auto& r : runs) weights.push_back(std::exp(-r.record.time));
  const Summary s = summarize(weights);
  CheckResult check;
  check.name = "laplace_transform_lambda_1";
  check.statistic = s.mean;
  check.reference = laplace_transform_level(level, params, 1.0);
  check.threshold = 3.0 * s.stderr_mean + 0.01;
  check.passed = std::abs(s.mean - check.reference) <= check.threshold;
  return check;
}

CheckResult angle_check(const std::vector<Replica>& runs) {
  std::vector<double> angles;
  angles.reserve(runs.size());
  for (const auto& r : runs) angles.push_back(r.aux);
  const TestResult t = chi_square_uniform(angles, kAngleBins, -std::numbers::pi, std::numbers::pi);
  CheckResult check;
  check.name = "exit_angle_uniform_chi2";
  check.statistic = t.statistic;
  check.p_value = t.p_value;
  check.threshold = chi_square_critical(kAngleBins - 1, kTestLevel);
  check.passed = t.statistic <= check.threshold;
  return check;
}

std::vector<CheckResult> build_checks(const ExperimentConfig& c, const std::vector<Replica>& runs) {
  std::vector<CheckResult> checks;
  const auto total = static_cast<std::int64_t>(runs.size());
  switch (c.algorithm) {
    case Algorithm::a1:
    case Algorithm::a2: {
      const double upper = c.level - (1.0 - c.gamma) * c.eps;
      const double lower = c.level - c.eps;
      const std::int64_t bound =
          level_step_lower_bound(c.level - c.x0, c.eps, c.gamma);
      std::int64_t in_band = 0;
      std::int64_t above_bound = 0;
      for (const auto& r : runs) {
        if (r.record.radial_position >= lower && r.record.radial_position <= upper) ++in_band;
        if (r.record.steps >= bound) ++above_bound;
      }
      if (c.x0 < lower) checks.push_back(fraction_check("stop_band", in_band, total));
      checks.push_back(fraction_check("step_lower_bound", above_bound, total));
      if (c.x0 == 0.0) {
        checks.push_back(laplace_check(runs, c.level, BesselParams::from_dimension(c.dimension)));
      }
      if (c.algorithm == Algorithm::a1 && c.x0 < lower) checks.push_back(angle_check(runs));
      break;
    }
    case Algorithm::a4: {
      std::int64_t before_root = 0;
      for (const auto& r : runs) {
        if (r.record.time < c.beta0 / c.beta1) ++before_root;
      }
      checks.push_back(fraction_check("time_before_boundary_root", before_root, total));
      break;
    }
    case Algorithm::cir: {
      const double root = c.cir_c * c.cir_c / (4.0 * c.cir_b);
      std::int64_t before_root = 0;
      for (const auto& r : runs) {
        if (r.aux < root) ++before_root;
      }
      checks.push_back(fraction_check("bessel_time_before_root", before_root, total));
      break;
    }
    case Algorithm::euler_bm: {
      std::vector<double> times;
      times.reserve(runs.size());
      for (const auto& r : runs) times.push_back(r.record.time);
      const Summary s = summarize(times);
      CheckResult check;
      check.name = "mean_exit_time";
      check.statistic = s.mean;
      check.reference = c.level * c.level / c.dimension;
      // Grid monitoring overshoots the sphere by O(sqrt(dt)).
      check.threshold = 3.0 * s.stderr_mean + 2.0 * c.level * std::sqrt(c.dt) / c.dimension;
      check.passed = std::abs(s.mean - check.reference) <= check.threshold;
      checks.push_back(check);
      if (c.dimension == 2) checks.push_back(angle_check(runs));
      break;
    }
    default:
      break;
  }
  return checks;
}

Histogram time_histogram(const std::vector<SampleRecord>& samples) {
  Histogram h;
  double hi = 0.0;
  for (const auto& s : samples) {
    if (std::isfinite(s.time)) hi = std::max(hi, s.time);
  }
  h.hi = hi;
  h.counts.assign(kHistogramBins, 0);
  if (!(hi > 0.0)) return h;
  for (const auto& s : samples) {
    if (!std::isfinite(s.time)) continue;
    auto k = static_cast<long>(std::floor(s.time / hi * kHistogramBins));
    k = std::clamp(k, 0L, static_cast<long>(kHistogramBins) - 1);
    ++h.counts[static_cast<std::size_t>(k)];
  }
  return h;
}

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["algorithm"] = std::string(to_string(c.algorithm));
  j["dim"] = c.dimension;
  j["level"] = number(c.level);
  j["x0"] = number(c.x0);
  j["eps"] = number(c.eps);
  j["gamma"] = number(c.gamma);
  j["kappa"] = number(c.kappa);
  j["beta0"] = number(c.beta0);
  j["beta1"] = number(c.beta1);
  j["slope"] = number(c.slope);
  j["delta_min"] = number(resolved_delta_min(c));
  j["a"] = number(c.cir_a);
  j["b"] = number(c.cir_b);
  j["c"] = number(c.cir_c);
  j["dt"] = number(c.dt);
  j["horizon"] = number(effective_horizon(c));
  j["curve"] = std::string(to_string(c.curve));
  j["alpha"] = number(std::isnan(c.alpha) ? c.eps : c.alpha);
  j["n"] = c.n;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["step_cap"] = c.step_cap;
  return j;
}

nlohmann::ordered_json summary_json(const Summary& s) {
  return {{"count", s.count}, {"mean", number(s.mean)}, {"stderr", number(s.stderr_mean)}};
}

}  // namespace

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::level: return "level";
    case CurveKind::linear: return "linear";
    case CurveKind::sqrt: return "sqrt";
  }
  return "unknown";
}

CurveKind parse_curve_kind(std::string_view name) {
  for (auto k : {CurveKind::level, CurveKind::linear, CurveKind::sqrt}) {
    if (to_string(k) == name) return k;
  }
  fail("curve", "unknown value '" + std::string(name) + "' (expected level, linear or sqrt)");
}

double effective_horizon(const ExperimentConfig& c) {
  if (!std::isnan(c.horizon)) return c.horizon;
  switch (c.algorithm) {
    case Algorithm::euler_cir: return default_cir_horizon(cir_params(c));
    case Algorithm::euler_bessel_curve:
      switch (c.curve) {
        case CurveKind::level: return 50.0 * c.level * c.level / c.dimension;
        case CurveKind::linear: return c.level / c.slope + 2.0 * c.dt;
        case CurveKind::sqrt: return c.beta0 / c.beta1 + 2.0 * c.dt;
      }
      break;
    default: break;
  }
  return kInf;
}

void validate_config(const ExperimentConfig& c) {
  require(c.n >= 1, "n", "must be >= 1");
  require(c.workers >= 1, "workers", "must be >= 1");
  require(c.step_cap >= 1, "step-cap", "must be >= 1");
  require(c.dimension >= 1, "dim", "must be a positive integer");
  const Algorithm alg = c.algorithm;
  const bool walk = alg == Algorithm::a1 || alg == Algorithm::a2 || alg == Algorithm::a3 ||
                    alg == Algorithm::a4 || alg == Algorithm::cir;
  const bool euler = alg == Algorithm::euler_bm || alg == Algorithm::euler_cir ||
                     alg == Algorithm::euler_bessel_curve;
  if (walk) require(c.eps >= kMinEpsilon, "eps", "must be >= 1e-12");
  if (alg == Algorithm::a1 || alg == Algorithm::a2) {
    require(c.gamma > 0.0 && c.gamma < 1.0, "gamma", "must lie in (0, 1)");
  }
  if (alg == Algorithm::a4 || alg == Algorithm::cir) {
    require(c.kappa > 0.0 && c.kappa < 1.0, "kappa", "must lie in (0, 1)");
  }
  if (alg == Algorithm::a1) {
    require(c.dimension == 2, "dim", "a1 is the planar walk and needs dim = 2");
  }
  if (alg != Algorithm::a4) require(c.level > 0.0, "level", "must be positive");
  require(c.x0 >= 0.0, "x0", "must be >= 0");
  if (alg == Algorithm::a3) {
    require(c.slope >= 0.0, "slope", "must be >= 0 (the curve must be nonincreasing)");
    require(resolved_delta_min(c) > 0.0, "delta-min", "must be positive");
    require(resolved_delta_min(c) >= c.slope, "delta-min", "must bound the slope");
  }
  if (alg == Algorithm::a4 ||
      (alg == Algorithm::euler_bessel_curve && c.curve == CurveKind::sqrt)) {
    require(c.beta0 > 0.0, "beta0", "must be positive");
    require(c.beta1 > 0.0, "beta1", "must be positive");
  }
  if (alg == Algorithm::euler_bessel_curve && c.curve == CurveKind::linear) {
    require(c.slope > 0.0, "slope", "must be positive");
  }
  if (alg == Algorithm::cir) validate_cir_for_woms(cir_params(c));
  if (alg == Algorithm::euler_cir) validate_cir(cir_params(c));
  if (euler) require(c.dt > 0.0, "dt", "must be positive");
  if (!std::isnan(c.horizon)) require(c.horizon > 0.0, "horizon", "must be positive");
  if (!std::isnan(c.alpha)) require(c.alpha > 0.0, "alpha", "must be positive");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const auto started = std::chrono::steady_clock::now();
  const std::vector<Replica> runs = parallel_replicas<Replica>(
      config.n, config.seed, config.workers,
      [&](std::int64_t k, RngStream& rng) { return run_one(config, k, rng); });

  ExperimentResult result;
  result.samples.reserve(runs.size());
  for (const auto& r : runs) result.samples.push_back(r.record);

  RunReport& report = result.report;
  report.config = config;
  report.n = config.n;
  std::vector<double> times;
  std::vector<double> steps;
  times.reserve(runs.size());
  steps.reserve(runs.size());
  for (const auto& s : result.samples) {
    if (!std::isfinite(s.time)) ++report.censored;
    times.push_back(s.time);
    steps.push_back(static_cast<double>(s.steps));
  }
  report.time = summarize(times);
  report.steps = summarize(steps);
  report.time_histogram = time_histogram(result.samples);
  report.checks = build_checks(config, runs);
  if (config.algorithm == Algorithm::cir) {
    std::vector<double> bessel_times;
    bessel_times.reserve(runs.size());
    for (const auto& r : runs) bessel_times.push_back(r.aux);
    std::vector<double> grid;
    const double t_hi = *std::max_element(times.begin(), times.end());
    for (int i = 1; i <= 20; ++i) grid.push_back(t_hi * i / 20.0);
    const double alpha = std::isnan(config.alpha) ? config.eps : config.alpha;
    report.sandwich = cir_sandwich(cir_params(config), bessel_times, config.eps, alpha, grid);
  }
  if (config.timing) {
    report.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  return result;
}

std::string format_double(double value) {
  char buffer[64];
  const auto res = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, res.ptr);
}

void write_samples_csv(std::ostream& out, const std::vector<SampleRecord>& samples) {
  out << "sample_index,time,radial_position,steps\n";
  for (const auto& s : samples) {
    out << s.sample_index << ',' << format_double(s.time) << ','
        << format_double(s.radial_position) << ',' << s.steps << '\n';
  }
}

namespace {

template <class T>
T parse_field(std::string_view text, std::size_t line) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": cannot parse '" +
                             std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<SampleRecord> read_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "sample_index,time,radial_position,steps") {
    throw std::runtime_error("csv: missing or unexpected header");
  }
  std::vector<SampleRecord> samples;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::string_view rest(line);
    std::string_view fields[4];
    for (int i = 0; i < 4; ++i) {
      const auto comma = rest.find(',');
      if ((i < 3) == (comma == std::string_view::npos)) {
        throw std::runtime_error("csv line " + std::to_string(number) + ": expected 4 fields");
      }
      fields[i] = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    SampleRecord s;
    s.sample_index = parse_field<std::int64_t>(fields[0], number);
    s.time = parse_field<double>(fields[1], number);
    s.radial_position = parse_field<double>(fields[2], number);
    s.steps = parse_field<std::int64_t>(fields[3], number);
    samples.push_back(s);
  }
  return samples;
}

std::string report_to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = report.schema_version;
  j["config"] = config_json(report.config);
  j["n"] = report.n;
  j["censored"] = report.censored;
  j["time"] = summary_json(report.time);
  j["steps"] = summary_json(report.steps);
  j["time_histogram"] = {{"lo", report.time_histogram.lo},
                         {"hi", report.time_histogram.hi},
                         {"counts", report.time_histogram.counts}};
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"statistic", number(c.statistic)},
                      {"p_value", number(c.p_value)},
                      {"reference", number(c.reference)},
                      {"threshold", number(c.threshold)},
                      {"passed", c.passed}});
  }
  j["checks"] = checks;
  if (!report.sandwich.empty()) {
    auto sandwich = nlohmann::ordered_json::array();
    for (const auto& p : report.sandwich) {
      sandwich.push_back({{"t", number(p.t)}, {"lower", number(p.lower)},
                          {"upper", number(p.upper)}});
    }
    j["sandwich"] = sandwich;
  }
  if (report.wall_clock_seconds) j["wall_clock_seconds"] = *report.wall_clock_seconds;
  return j.dump(2) + "\n";
}

void write_outputs(const ExperimentResult& result) {
  const ExperimentConfig& c = result.report.config;
  if (!c.out_csv.empty()) {
    std::ofstream out(c.out_csv, std::ios::binary);
    if (!out) throw ConfigError("out-csv: cannot open '" + c.out_csv + "' for writing");
    write_samples_csv(out, result.samples);
  }
  if (!c.out_json.empty()) {
    std::ofstream out(c.out_json, std::ios::binary);
    if (!out) throw ConfigError("out-json: cannot open '" + c.out_json + "' for writing");
    out << report_to_json(result.report);
  }
}

}  // namespace woms

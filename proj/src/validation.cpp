#include "woms/validation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "woms/cir.hpp"
#include "woms/euler.hpp"
#include "woms/experiment.hpp"
#include "woms/hitting_laws.hpp"
#include "woms/parallel.hpp"
#include "woms/samplers.hpp"
#include "woms/stats.hpp"
#include "woms/woms_engine.hpp"

namespace woms {

namespace {

constexpr double kTestLevel = 1e-3;
constexpr double kTableTolerance = 0.04;
constexpr double kSupDistance = 0.02;
// The grid oracle misses crossings between grid points; its CDF bias shrinks
// like sqrt(dt) and is about 0.019 at dt = 1e-4 for the second family, so the
// curved-family comparison runs on a finer grid over a shorter window.
constexpr double kCurvedHorizon = 2.0;
constexpr double kCurvedDt = 1e-5;

const std::vector<double> kEpsValues = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
const std::vector<double> kEpsReference = {4.0807,   7.53902,  9.50845, 10.83133,
                                           10.94468, 11.30869, 11.62303};
const std::vector<double> kNuValues = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
const std::vector<double> kNuReference = {6.819, 7.405,  8.270,  8.887, 9.594,
                                          10.256, 10.542, 10.995, 11.096};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

std::uint64_t criterion_seed(const SuiteOptions& o, int id) {
  return o.seed * 1000 + static_cast<std::uint64_t>(id);
}

ExperimentConfig level_walk_config(int dimension, double eps, std::int64_t n, std::uint64_t seed,
                                   int workers) {
  ExperimentConfig c;
  c.algorithm = Algorithm::a2;
  c.dimension = dimension;
  c.level = 2.0;
  c.eps = eps;
  c.gamma = 0.9;
  c.n = n;
  c.seed = seed;
  c.workers = workers;
  return c;
}

TableRow table_row(const std::string& name, double value, const Summary& steps,
                   double reference) {
  return TableRow{name, value, steps.mean, steps.stderr_mean, reference,
                  (steps.mean - reference) / reference};
}

std::string table_detail(const std::vector<TableRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    if (!out.empty()) out += "; ";
    out += r.parameter + "=" + fmt(r.value) + ": " + fmt(r.mean_steps) + " vs " +
           fmt(r.reference) + " (" + fmt(100.0 * r.relative_error) + "%)";
  }
  return out;
}

bool table_within(const std::vector<TableRow>& rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const TableRow& r) { return std::abs(r.relative_error) <= kTableTolerance; });
}

CriterionResult eps_table(const SuiteOptions& o) {
  const auto rows = reproduce_eps_table(criterion_seed(o, 1), o.workers);
  return {1, "table of mean steps versus eps within 4%", table_within(rows), table_detail(rows)};
}

CriterionResult dimension_table(const SuiteOptions& o) {
  const auto rows = reproduce_dimension_table(criterion_seed(o, 2), o.workers);
  return {2, "table of mean steps versus dimension within 4%", table_within(rows),
          table_detail(rows)};
}

CriterionResult log_growth(const SuiteOptions& o) {
  const auto rows = reproduce_eps_table(criterion_seed(o, 1), o.workers);
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    monotone = monotone && rows[i].mean_steps >= rows[i - 1].mean_steps;
  }
  const double last = rows.back().mean_steps;
  const bool bounded = last <= 12.5;
  std::string detail = "nondecreasing=" + std::string(monotone ? "yes" : "no") +
                       "; mean steps at eps=1e-7: " + fmt(last) + " (bound 12.5)";
  // steps per unit of log(1/eps) between the ends of the range
  detail += "; slope per decade " +
            fmt((last - rows.front().mean_steps) / static_cast<double>(rows.size() - 1));
  return {3, "logarithmic step growth, E[N] at eps=1e-7 <= 12.5", monotone && bounded, detail};
}

CriterionResult laplace_oracle(const SuiteOptions& o) {
  bool ok = true;
  std::string detail;
  for (int dimension : {2, 3}) {
    const BesselParams params = BesselParams::from_dimension(dimension);
    const auto weights = parallel_replicas<double>(
        100000, criterion_seed(o, 4) + static_cast<std::uint64_t>(dimension), o.workers,
        [&](std::int64_t, RngStream& rng) {
          return std::exp(-run_a2(params, LevelWalk{1.0, 1e-4, 0.9, 0.0}, rng).time);
        });
    const Summary s = summarize(weights);
    const double exact = laplace_transform_level(1.0, params, 1.0);
    const double budget = 3.0 * s.stderr_mean + 0.01;
    const bool pass = std::abs(s.mean - exact) <= budget;
    ok = ok && pass;
    if (!detail.empty()) detail += "; ";
    detail += "dim " + std::to_string(dimension) + ": " + fmt(s.mean) + " vs " + fmt(exact) +
              " (|diff| " + fmt(std::abs(s.mean - exact)) + ", budget " + fmt(budget) + ")";
  }
  return {4, "Laplace transform of the level hitting time", ok, detail};
}

CriterionResult exact_sampler(const SuiteOptions& o) {
  bool ok = true;
  std::string detail;
  const std::int64_t n = 100000;
  const double critical = ks_critical_one_sample(n, kTestLevel);
  for (auto [nu, a] : {std::pair{0.0, 1.0}, std::pair{1.0, 2.0}, std::pair{2.0, 5.0}}) {
    const BesselParams params = BesselParams::from_index(nu);
    const auto draws = parallel_replicas<double>(
        n, criterion_seed(o, 5) + static_cast<std::uint64_t>(nu * 10), o.workers,
        [&](std::int64_t, RngStream& rng) { return sample_first_passage_psi(a, params, rng); });
    const TestResult t =
        ks_one_sample(draws, [&](double x) { return cdf_family1(a, params, x); });
    ok = ok && t.statistic <= critical;
    if (!detail.empty()) detail += "; ";
    detail += "(nu,a)=(" + fmt(nu) + "," + fmt(a) + "): D=" + fmt(t.statistic) + " p=" +
              fmt(t.p_value);
  }
  detail += "; critical " + fmt(critical);
  return {5, "exact moving-sphere sampler matches its CDF (KS at 0.1%)", ok, detail};
}

CriterionResult density_mass(const SuiteOptions&) {
  bool ok = true;
  std::string detail;
  for (auto [nu, a] : {std::pair{0.0, 1.0}, std::pair{2.0, 5.0}}) {
    const BesselParams params = BesselParams::from_index(nu);
    const HittingLaw law(FirstFamily{a}, params);
    const double mass = law.mass();
    const double end = t_max(a, params);
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double t = end * i / 21.0;
      const double h = 1e-6 * end;
      const double fd = (cdf_family1(a, params, t + h) - cdf_family1(a, params, t - h)) / (2 * h);
      worst = std::max(worst, std::abs(fd - density_family1(a, params, t)));
    }
    ok = ok && std::abs(mass - 1.0) <= 1e-8 && worst <= 1e-6;
    if (!detail.empty()) detail += "; ";
    detail += "(nu,a)=(" + fmt(nu) + "," + fmt(a) + "): |mass-1|=" + fmt(std::abs(mass - 1.0)) +
              " max|fd-density|=" + fmt(worst);
  }
  return {6, "first-family density integrates to 1 and differentiates its CDF", ok, detail};
}

CriterionResult euler_agreement(const SuiteOptions& o) {
  const std::int64_t n = 20000;
  const std::uint64_t seed = criterion_seed(o, 7);
  const BesselParams params = BesselParams::from_dimension(2);
  const auto a1 = parallel_replicas<double>(n, seed, o.workers, [](std::int64_t, RngStream& rng) {
    return run_a1(PlanarLevelWalk{1.0, 1e-3, 0.9, {0.0, 0.0}}, rng).sample.time;
  });
  const auto a2 = parallel_replicas<double>(n, seed + 1, o.workers,
                                            [&](std::int64_t, RngStream& rng) {
                                              return run_a2(params, LevelWalk{1.0, 1e-3}, rng).time;
                                            });
  const auto euler = parallel_replicas<double>(
      n, seed + 2, o.workers,
      [](std::int64_t, RngStream& rng) { return euler_bm_exit(2, 1.0, 1e-4, rng).time; });
  const TestResult d1 = ks_two_sample(a1, euler);
  const TestResult d2 = ks_two_sample(a2, euler);
  const bool ok = d1.statistic <= kSupDistance && d2.statistic <= kSupDistance;
  return {7, "planar and radial walks agree with the Euler exit time (sup <= 0.02)", ok,
          "A1 vs Euler D=" + fmt(d1.statistic) + ", A2 vs Euler D=" + fmt(d2.statistic)};
}

CriterionResult exit_angle(const SuiteOptions& o) {
  const auto angles = parallel_replicas<double>(
      20000, criterion_seed(o, 8), o.workers, [](std::int64_t, RngStream& rng) {
        const PlanarHit hit = run_a1(PlanarLevelWalk{1.0, 1e-3, 0.9, {0.0, 0.0}}, rng);
        return std::atan2(hit.position[1], hit.position[0]);
      });
  const TestResult t = chi_square_uniform(angles, 36, -std::numbers::pi, std::numbers::pi);
  const double critical = chi_square_critical(35, kTestLevel);
  return {8, "planar exit angle is uniform (chi-square, 36 bins)", t.statistic <= critical,
          "chi2=" + fmt(t.statistic) + " p=" + fmt(t.p_value) + " critical " + fmt(critical)};
}

CriterionResult stop_band(const SuiteOptions& o) {
  struct Tally {
    std::int64_t runs = 0;
    std::int64_t band_violations = 0;
    std::int64_t bound_violations = 0;
    std::int64_t lifetime_violations = 0;
  };
  Tally total;
  std::uint64_t seed = criterion_seed(o, 9);
  const double level = 2.0;
  const double gamma = 0.9;
  for (int dimension : {1, 2, 3, 4, 6}) {
    for (double eps : {1e-1, 1e-3, 1e-5, 1e-7}) {
      const BesselParams params = BesselParams::from_dimension(dimension);
      const std::int64_t bound = level_step_lower_bound(level, eps, gamma);
      const auto tallies = parallel_replicas<Tally>(
          5000, seed++, o.workers, [&](std::int64_t, RngStream& rng) {
            Tally t;
            t.runs = 1;
            WalkOptions opts;
            opts.observer = [&](const WalkState& before, const WalkState& after) {
              if (after.last_xi > t_max(before.image_constant, params)) ++t.lifetime_violations;
            };
            const HittingSample s = run_a2(params, LevelWalk{level, eps, gamma, 0.0}, rng, opts);
            if (s.radial_position < level - eps || s.radial_position > level - (1 - gamma) * eps) {
              ++t.band_violations;
            }
            if (s.steps < bound) ++t.bound_violations;
            return t;
          });
      for (const auto& t : tallies) {
        total.runs += t.runs;
        total.band_violations += t.band_violations;
        total.bound_violations += t.bound_violations;
        total.lifetime_violations += t.lifetime_violations;
      }
    }
  }
  const bool ok = total.band_violations == 0 && total.bound_violations == 0 &&
                  total.lifetime_violations == 0;
  return {9, "stop band, step lower bound and sphere lifetimes hold on every run", ok,
          std::to_string(total.runs) + " runs; band violations " +
              std::to_string(total.band_violations) + ", lower-bound violations " +
              std::to_string(total.bound_violations) + ", lifetime violations " +
              std::to_string(total.lifetime_violations)};
}

CriterionResult curved_families(const SuiteOptions& o) {
  const std::int64_t n = 20000;
  const BesselParams params = BesselParams::from_index(0.0);
  bool ok = true;
  std::string detail;
  struct Case {
    std::string name;
    HittingLaw law;
    double dt;
  };
  // The Laplace-family closed form carries more than unit mass on the window,
  // so no grid refinement can bring the oracle within reach; it runs on the
  // default grid. The second family gets the fine grid.
  const std::vector<Case> cases = {
      {"second (nu,a,s)=(0,1.5,1)", HittingLaw(SecondFamily{1.5, 1.0}, params), kCurvedDt},
      {"laplace (nu,a,lambda)=(0,1,1)", HittingLaw(LaplaceFamily{1.0, 1.0}, params),
       kDefaultEulerDt}};
  std::uint64_t seed = criterion_seed(o, 10);
  for (const auto& [name, law, dt] : cases) {
    const double horizon = std::min(kCurvedHorizon, law.t_domain().second);
    const auto times = parallel_replicas<double>(n, seed++, o.workers,
                                                 [&](std::int64_t, RngStream& rng) {
      const EulerOutcome out = euler_bessel_curved(
          params.dimension(), [&](double t) { return law.boundary(std::min(t, horizon)); }, dt,
          horizon, rng);
      return out.time.value_or(std::numeric_limits<double>::infinity());
    });
    const TestResult t = ks_one_sample(times, [&](double x) { return law.cdf(x); }, horizon);
    ok = ok && t.statistic <= kSupDistance;
    if (!detail.empty()) detail += "; ";
    detail += name + ": sup=" + fmt(t.statistic) + " on [0," + fmt(horizon) + "] at dt=" +
              fmt(dt) + ", cdf(H)=" + fmt(law.cdf(horizon));
  }
  return {10, "second and Laplace family CDFs match the Euler curved-boundary oracle", ok,
          detail};
}

CriterionResult cir_pipeline(const SuiteOptions& o) {
  const CirParams p{2.0, 0.5, 2.0, 0.0, 1.0};
  const std::int64_t n = 20000;
  const double horizon = default_cir_horizon(p);
  const auto woms = parallel_replicas<double>(
      n, criterion_seed(o, 11), o.workers,
      [&](std::int64_t, RngStream& rng) { return sample_cir_hitting(p, 1e-4, 0.9, rng).time; });
  const auto euler = parallel_replicas<double>(
      n, criterion_seed(o, 11) + 1, o.workers, [&](std::int64_t, RngStream& rng) {
        return euler_cir(p, kDefaultEulerDt, horizon, rng)
            .time.value_or(std::numeric_limits<double>::infinity());
      });
  const TestResult t = ks_two_sample(woms, euler, horizon);
  const auto censored = std::count_if(euler.begin(), euler.end(),
                                      [](double x) { return !std::isfinite(x); });
  return {11, "CIR hitting time agrees with the Euler CIR baseline (sup <= 0.02)",
          t.statistic <= kSupDistance,
          "sup=" + fmt(t.statistic) + ", Euler censored " + std::to_string(censored) +
              " of " + std::to_string(n) + " at horizon " + fmt(horizon)};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

CriterionResult determinism(const SuiteOptions& o) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("woms_determinism_" + std::to_string(criterion_seed(o, 12)));
  fs::create_directories(dir);
  std::vector<ExperimentConfig> configs;
  {
    ExperimentConfig c = level_walk_config(3, 1e-4, 2000, criterion_seed(o, 12), 3);
    configs.push_back(c);
    c.algorithm = Algorithm::a1;
    c.dimension = 2;
    configs.push_back(c);
    c.algorithm = Algorithm::cir;
    configs.push_back(c);
    c.algorithm = Algorithm::euler_bessel_curve;
    c.n = 500;
    configs.push_back(c);
  }
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::string outputs[2][2];
    for (int rerun = 0; rerun < 2; ++rerun) {
      ExperimentConfig c = configs[i];
      const std::string stem = (dir / (std::to_string(i) + "_" + std::to_string(rerun))).string();
      c.out_csv = stem + ".csv";
      c.out_json = stem + ".json";
      write_outputs(run_experiment(c));
      outputs[rerun][0] = slurp(c.out_csv);
      outputs[rerun][1] = slurp(c.out_json);
    }
    const bool same = outputs[0][0] == outputs[1][0] && outputs[0][1] == outputs[1][1] &&
                      !outputs[0][0].empty();
    ok = ok && same;
    if (!detail.empty()) detail += "; ";
    detail += std::string(to_string(configs[i].algorithm)) + (same ? " identical" : " DIFFERS");
  }
  fs::remove_all(dir);
  return {12, "reruns with the same seed and workers are byte-identical", ok, detail};
}

}  // namespace

std::vector<TableRow> reproduce_eps_table(std::uint64_t seed, int workers, std::int64_t n) {
  // criteria 1 and 3 read the same table; it is a pure function of its arguments
  static std::mutex cache_mutex;
  static std::map<std::tuple<std::uint64_t, int, std::int64_t>, std::vector<TableRow>> cache;
  const auto key = std::make_tuple(seed, workers, n);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::vector<TableRow> rows;
  for (std::size_t i = 0; i < kEpsValues.size(); ++i) {
    const auto result =
        run_experiment(level_walk_config(6, kEpsValues[i], n, seed + i, workers));
    rows.push_back(table_row("eps", kEpsValues[i], result.report.steps, kEpsReference[i]));
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache[key] = rows;
  return rows;
}

std::vector<TableRow> reproduce_dimension_table(std::uint64_t seed, int workers, std::int64_t n) {
  std::vector<TableRow> rows;
  for (std::size_t i = 0; i < kNuValues.size(); ++i) {
    const int dimension = static_cast<int>(std::lround(2.0 * kNuValues[i] + 2.0));
    const auto result = run_experiment(level_walk_config(dimension, 1e-3, n, seed + i, workers));
    rows.push_back(table_row("nu", kNuValues[i], result.report.steps, kNuReference[i]));
  }
  return rows;
}

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  switch (id) {
    case 1: return eps_table(options);
    case 2: return dimension_table(options);
    case 3: return log_growth(options);
    case 4: return laplace_oracle(options);
    case 5: return exact_sampler(options);
    case 6: return density_mass(options);
    case 7: return euler_agreement(options);
    case 8: return exit_angle(options);
    case 9: return stop_band(options);
    case 10: return curved_families(options);
    case 11: return cir_pipeline(options);
    case 12: return determinism(options);
    default: break;
  }
  return {id, "unknown criterion", false, "no criterion with this id"};
}

std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& options) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    results.push_back(run_criterion(id, options));
  }
  return results;
}

}  // namespace woms

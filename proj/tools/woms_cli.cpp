#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "woms/errors.hpp"
#include "woms/experiment.hpp"
#include "woms/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStepCap = 3;
constexpr int kExitSuiteFailed = 4;

// Flags shared by every sampling subcommand.
void add_run_options(CLI::App* cmd, woms::ExperimentConfig& c) {
  cmd->add_option("--n", c.n, "Number of independent runs")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Master seed; run k uses stream k")->capture_default_str();
  cmd->add_option("--workers", c.workers, "Worker threads (results do not depend on it)")
      ->capture_default_str();
  cmd->add_option("--step-cap", c.step_cap, "Abort (exit 3) when a walk needs more steps")
      ->capture_default_str();
  cmd->add_option("--out-csv", c.out_csv, "Per-run samples");
  cmd->add_option("--out-json", c.out_json, "Run report");
  cmd->add_flag("--timing", c.timing, "Record wall-clock time in the report");
}

void print_summary(const woms::ExperimentResult& r) {
  const woms::RunReport& rep = r.report;
  std::printf("algorithm=%s n=%lld censored=%lld\n",
              std::string(woms::to_string(rep.config.algorithm)).c_str(),
              static_cast<long long>(rep.n), static_cast<long long>(rep.censored));
  std::printf("time:  mean=%.6g stderr=%.3g\n", rep.time.mean, rep.time.stderr_mean);
  std::printf("steps: mean=%.6g stderr=%.3g\n", rep.steps.mean, rep.steps.stderr_mean);
  for (const auto& check : rep.checks) {
    std::printf("check %-28s %s statistic=%.6g", check.name.c_str(),
                check.passed ? "ok  " : "FAIL", check.statistic);
    if (std::isfinite(check.reference)) std::printf(" reference=%.6g", check.reference);
    if (std::isfinite(check.threshold)) std::printf(" threshold=%.6g", check.threshold);
    std::printf("\n");
  }
  if (rep.wall_clock_seconds) std::printf("wall_clock_seconds=%.3f\n", *rep.wall_clock_seconds);
}

int run(const woms::ExperimentConfig& c) {
  const woms::ExperimentResult result = woms::run_experiment(c);
  woms::write_outputs(result);
  print_summary(result);
  return kExitOk;
}

void print_table(const std::string& title, const std::vector<woms::TableRow>& rows) {
  std::printf("%s\n", title.c_str());
  std::printf("%-10s %12s %12s %10s %12s %9s\n", "parameter", "value", "mean_steps", "stderr",
              "reference", "rel_err");
  for (const auto& row : rows) {
    std::printf("%-10s %12.4g %12.5f %10.5f %12.5f %8.2f%%\n", row.parameter.c_str(), row.value,
                row.mean_steps, row.stderr_steps, row.reference, 100.0 * row.relative_error);
  }
}

nlohmann::ordered_json table_json(const std::vector<woms::TableRow>& rows) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    out.push_back({{"parameter", row.parameter},
                   {"value", row.value},
                   {"mean_steps", row.mean_steps},
                   {"stderr_steps", row.stderr_steps},
                   {"reference", row.reference},
                   {"relative_error", row.relative_error}});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walk on moving spheres: hitting times of Bessel and CIR processes"};
  app.require_subcommand(1);

  woms::ExperimentConfig c;

  auto* level = app.add_subcommand("hit-level", "Hitting time of a constant level (a1 or a2)");
  std::string level_algorithm = "a2";
  level->add_option("--algorithm", level_algorithm, "a1 (planar walk, dim 2) or a2")
      ->check(CLI::IsMember({"a1", "a2"}))
      ->capture_default_str();
  level->add_option("--dim", c.dimension, "Dimension of the Bessel process")->capture_default_str();
  level->add_option("--level", c.level, "Level l")->capture_default_str();
  level->add_option("--x0", c.x0, "Start radius")->capture_default_str();
  level->add_option("--eps", c.eps, "Stopping band")->capture_default_str();
  level->add_option("--gamma", c.gamma, "Sphere size fraction in (0, 1)")->capture_default_str();
  add_run_options(level, c);

  auto* curve = app.add_subcommand("hit-curve", "Hitting time of l(t) = level - slope t (a3)");
  curve->add_option("--dim", c.dimension)->capture_default_str();
  curve->add_option("--level", c.level, "Value of the curve at 0")->capture_default_str();
  curve->add_option("--slope", c.slope, "Slope of the decreasing curve")->capture_default_str();
  curve->add_option("--delta-min", c.delta_min, "Derivative bound (defaults to the slope)");
  curve->add_option("--x0", c.x0)->capture_default_str();
  curve->add_option("--eps", c.eps)->capture_default_str();
  add_run_options(curve, c);

  auto* sqrt_cmd = app.add_subcommand("hit-sqrt", "Hitting time of sqrt(beta0 - beta1 t) (a4)");
  sqrt_cmd->add_option("--dim", c.dimension)->capture_default_str();
  sqrt_cmd->add_option("--beta0", c.beta0)->capture_default_str();
  sqrt_cmd->add_option("--beta1", c.beta1)->capture_default_str();
  sqrt_cmd->add_option("--kappa", c.kappa, "Sphere size fraction in (0, 1)")->capture_default_str();
  sqrt_cmd->add_option("--x0", c.x0)->capture_default_str();
  sqrt_cmd->add_option("--eps", c.eps)->capture_default_str();
  add_run_options(sqrt_cmd, c);

  auto* cir = app.add_subcommand("cir", "Level hitting time of a CIR process via the time change");
  cir->add_option("--a", c.cir_a, "Drift constant")->capture_default_str();
  cir->add_option("--b", c.cir_b, "Drift slope (> 0)")->capture_default_str();
  cir->add_option("--c", c.cir_c, "Volatility")->capture_default_str();
  cir->add_option("--x0", c.x0, "Start value")->capture_default_str();
  cir->add_option("--level", c.level)->capture_default_str();
  cir->add_option("--eps", c.eps)->capture_default_str();
  cir->add_option("--kappa", c.kappa)->capture_default_str();
  cir->add_option("--alpha", c.alpha, "Offset of the sandwich bounds (defaults to eps)");
  add_run_options(cir, c);

  auto* baseline = app.add_subcommand("baseline", "Euler reference schemes");
  std::string kind;
  std::string curve_kind = "sqrt";
  baseline->add_option("kind", kind, "euler-bm, euler-cir or euler-bessel-curve")
      ->required()
      ->check(CLI::IsMember({"euler-bm", "euler-cir", "euler-bessel-curve"}));
  baseline->add_option("--dim", c.dimension)->capture_default_str();
  baseline->add_option("--level", c.level)->capture_default_str();
  baseline->add_option("--x0", c.x0)->capture_default_str();
  baseline->add_option("--dt", c.dt, "Time step")->capture_default_str();
  baseline->add_option("--horizon", c.horizon, "Censoring horizon");
  baseline->add_option("--curve", curve_kind, "Boundary of euler-bessel-curve: level, linear, sqrt")
      ->capture_default_str();
  baseline->add_option("--slope", c.slope)->capture_default_str();
  baseline->add_option("--beta0", c.beta0)->capture_default_str();
  baseline->add_option("--beta1", c.beta1)->capture_default_str();
  baseline->add_option("--a", c.cir_a)->capture_default_str();
  baseline->add_option("--b", c.cir_b)->capture_default_str();
  baseline->add_option("--c", c.cir_c)->capture_default_str();
  add_run_options(baseline, c);

  auto* validate = app.add_subcommand("validate", "Run the acceptance suite (exit 4 on failure)");
  woms::SuiteOptions suite;
  validate->add_option("--seed", suite.seed)->capture_default_str();
  validate->add_option("--workers", suite.workers)->capture_default_str();
  validate->add_option("--only", suite.only, "Criterion ids to run")
      ->check(CLI::Range(1, woms::kCriterionCount));

  auto* tables = app.add_subcommand("reproduce-tables", "Mean step counts versus eps and dimension");
  std::uint64_t table_seed = 1;
  int table_workers = 1;
  std::int64_t n_eps = 100000;
  std::int64_t n_dim = 50000;
  std::string tables_json;
  tables->add_option("--seed", table_seed)->capture_default_str();
  tables->add_option("--workers", table_workers)->capture_default_str();
  tables->add_option("--n-eps", n_eps, "Runs per row of the eps table")->capture_default_str();
  tables->add_option("--n-dim", n_dim, "Runs per row of the dimension table")->capture_default_str();
  tables->add_option("--out-json", tables_json, "Write both tables as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (level->parsed()) {
      c.algorithm = woms::parse_algorithm(level_algorithm);
      return run(c);
    }
    if (curve->parsed()) {
      c.algorithm = woms::Algorithm::a3;
      return run(c);
    }
    if (sqrt_cmd->parsed()) {
      c.algorithm = woms::Algorithm::a4;
      return run(c);
    }
    if (cir->parsed()) {
      c.algorithm = woms::Algorithm::cir;
      return run(c);
    }
    if (baseline->parsed()) {
      c.algorithm = woms::parse_algorithm(kind);
      c.curve = woms::parse_curve_kind(curve_kind);
      return run(c);
    }
    if (validate->parsed()) {
      if (suite.workers < 1) throw woms::ConfigError("workers: must be >= 1");
      bool all = true;
      for (const auto& r : woms::run_acceptance_suite(suite)) {
        all = all && r.passed;
        std::printf("[%s] criterion %2d: %s | %s\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.title.c_str(), r.detail.c_str());
        std::fflush(stdout);
      }
      return all ? kExitOk : kExitSuiteFailed;
    }
    if (tables->parsed()) {
      if (table_workers < 1) throw woms::ConfigError("workers: must be >= 1");
      if (n_eps < 1 || n_dim < 1) throw woms::ConfigError("n-eps, n-dim: must be >= 1");
      const auto eps_rows = woms::reproduce_eps_table(table_seed, table_workers, n_eps);
      print_table("Mean steps of the level walk versus eps (l=2, nu=2, gamma=0.9)", eps_rows);
      std::printf("\n");
      const auto dim_rows = woms::reproduce_dimension_table(table_seed, table_workers, n_dim);
      print_table("Mean steps of the level walk versus nu (l=2, eps=1e-3, gamma=0.9)", dim_rows);
      if (!tables_json.empty()) {
        std::ofstream out(tables_json, std::ios::binary);
        if (!out) throw woms::ConfigError("out-json: cannot open '" + tables_json + "'");
        nlohmann::ordered_json j;
        j["schema_version"] = woms::kReportSchemaVersion;
        j["eps_table"] = table_json(eps_rows);
        j["dimension_table"] = table_json(dim_rows);
        out << j.dump(2) << "\n";
      }
      return kExitOk;
    }
  } catch (const woms::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const woms::DomainError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const woms::StepCapExceeded& e) {
    std::fprintf(stderr, "step cap exceeded: %s\n", e.what());
    return kExitStepCap;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}

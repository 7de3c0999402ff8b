#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "woms/cir.hpp"
#include "woms/stats.hpp"
#include "woms/woms_engine.hpp"

namespace woms {

inline constexpr int kReportSchemaVersion = 1;

/// Boundary used by the euler-bessel-curve baseline.
enum class CurveKind { level, linear, sqrt };

/// One batch experiment. Fields irrelevant to the chosen algorithm are ignored.
struct ExperimentConfig {
  Algorithm algorithm = Algorithm::a2;
  int dimension = 2;
  double level = 1.0;
  /// Start radius for the walks; start value of the CIR process.
  double x0 = 0.0;
  double eps = 1e-3;
  double gamma = kDefaultGamma;
  double kappa = kDefaultKappa;
  double beta0 = 1.0;
  double beta1 = 0.5;
  /// Linear curve l(t) = level - slope t for hit-curve and the linear baseline.
  double slope = 0.1;
  /// Derivative bound of the linear curve; NaN means "use slope".
  double delta_min = std::numeric_limits<double>::quiet_NaN();
  double cir_a = 2.0;
  double cir_b = 0.5;
  double cir_c = 2.0;
  double dt = kDefaultEulerDt;
  /// Censoring horizon of the curved and CIR baselines; NaN means the default.
  double horizon = std::numeric_limits<double>::quiet_NaN();
  CurveKind curve = CurveKind::sqrt;
  /// Sandwich offset for the CIR report; NaN means eps.
  double alpha = std::numeric_limits<double>::quiet_NaN();
  std::int64_t n = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::int64_t step_cap = 10'000'000;
  /// Record wall-clock time in the report (makes the JSON run-dependent).
  bool timing = false;
  std::string out_csv;
  std::string out_json;
};

std::string_view to_string(CurveKind kind);
CurveKind parse_curve_kind(std::string_view name);

/// Throws ConfigError naming the offending field before any sampling happens.
void validate_config(const ExperimentConfig& config);

/// Resolved censoring horizon of the baselines.
double effective_horizon(const ExperimentConfig& config);

struct SampleRecord {
  std::int64_t sample_index = 0;
  /// +inf for censored baseline runs.
  double time = 0.0;
  double radial_position = 0.0;
  std::int64_t steps = 0;

  bool operator==(const SampleRecord&) const = default;
};

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double p_value = std::numeric_limits<double>::quiet_NaN();
  double reference = std::numeric_limits<double>::quiet_NaN();
  double threshold = std::numeric_limits<double>::quiet_NaN();
  bool passed = false;
};

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::int64_t> counts;
};

struct RunReport {
  int schema_version = kReportSchemaVersion;
  ExperimentConfig config;
  std::int64_t n = 0;
  std::int64_t censored = 0;
  Summary time;
  Summary steps;
  Histogram time_histogram;
  std::vector<CheckResult> checks;
  std::vector<SandwichPoint> sandwich;
  std::optional<double> wall_clock_seconds;
};

struct ExperimentResult {
  RunReport report;
  std::vector<SampleRecord> samples;
};

/// Validates, runs config.n replicas (replica k on stream k) and aggregates.
/// Throws StepCapExceeded when any walk hits the step cap.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes the CSV and JSON files named in the config, when set.
void write_outputs(const ExperimentResult& result);

void write_samples_csv(std::ostream& out, const std::vector<SampleRecord>& samples);
/// Parses the output of write_samples_csv; throws std::runtime_error on malformed input.
std::vector<SampleRecord> read_samples_csv(std::istream& in);

/// Pretty-printed JSON report.
std::string report_to_json(const RunReport& report);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace woms

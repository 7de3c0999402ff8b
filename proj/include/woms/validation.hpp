#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace woms {

// The acceptance suite: each criterion runs at its stated sample size and
// reports a pass flag plus the measured numbers behind it.

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  int workers = 1;
  /// Criteria to run (1..12); empty runs all of them.
  std::vector<int> only;
};

inline constexpr int kCriterionCount = 12;

std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& options);

/// Runs a single criterion by id.
CriterionResult run_criterion(int id, const SuiteOptions& options);

/// One row of a step-count table next to its reference value.
struct TableRow {
  std::string parameter;
  double value = 0.0;
  double mean_steps = 0.0;
  double stderr_steps = 0.0;
  double reference = 0.0;
  double relative_error = 0.0;
};

/// Mean steps of the level walk (l = 2, nu = 2, gamma = 0.9) for eps = 1e-1 .. 1e-7.
std::vector<TableRow> reproduce_eps_table(std::uint64_t seed, int workers, std::int64_t n = 100000);

/// Mean steps of the level walk (l = 2, eps = 1e-3, gamma = 0.9) for nu = 0, 0.5, .., 4.
std::vector<TableRow> reproduce_dimension_table(std::uint64_t seed, int workers,
                                                std::int64_t n = 50000);

}  // namespace woms

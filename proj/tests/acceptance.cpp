#include <cstdio>
#include <cstdlib>
#include <string>

#include "woms/validation.hpp"

// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.
// Usage: woms_acceptance [criterion ids...]
int main(int argc, char** argv) {
  woms::SuiteOptions options;
  for (int i = 1; i < argc; ++i) options.only.push_back(std::atoi(argv[i]));
  bool all = true;
  for (int id = 1; id <= woms::kCriterionCount; ++id) {
    if (!options.only.empty()) {
      bool wanted = false;
      for (int k : options.only) wanted = wanted || k == id;
      if (!wanted) continue;
    }
    const woms::CriterionResult r = woms::run_criterion(id, options);
    all = all && r.passed;
    std::printf("[%s] criterion %2d: %s | %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}

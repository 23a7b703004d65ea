#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opwire {

struct LawResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;  // 0: exact / boolean law
  std::uint64_t first_failure_seed = 0;

  bool ok() const { return failures == 0; }
};

struct LawReport {
  std::string suite;
  std::vector<LawResult> results;

  bool ok() const {
    for (const auto& r : results)
      if (!r.ok()) return false;
    return true;
  }
};

/// Available suites: core, causal, functor, polycat.
std::vector<std::string> law_suite_names();

/// Runs every law of a suite over seeded random cases. `cases` sets the
/// budget of the largest laws; cheaper laws run a fixed fraction of it.
/// Each case derives its own sub-seed, reported on failure.
LawReport run_law_suite(const std::string& suite, std::uint64_t seed, int cases);

}  // namespace opwire

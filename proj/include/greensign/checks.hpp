#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "greensign/params.hpp"
#include "greensign/quadrature.hpp"

namespace greensign {

// One executed invariant check.
struct CheckResult {
  std::string name;
  bool passed;
  double worst;      // worst observed deviation
  double tolerance;
  std::string note;  // where the worst case happened
};

struct CheckReport {
  std::vector<CheckResult> results;
  bool all_passed() const {
    for (const CheckResult& r : results)
      if (!r.passed) return false;
    return true;
  }
};

// Runs the cross-module invariant suite: jump laws, symmetries, the
// defining-equation finite-difference residuals, normalizations,
// determinant identities and the comparison-relation residual.  When
// `at` is set, the randomized parameter draws are replaced by that point
// where applicable.
CheckReport run_check_suite(std::uint64_t seed, std::optional<ProblemParams> at,
                            const QuadratureCfg& cfg);

}  // namespace greensign

#pragma once

#include <vector>

#include "setfam/constraint.hpp"
#include "setfam/family.hpp"

namespace setfam {

struct Violation {
  SetMask a;
  SetMask b;
  ConstraintSpec rule;  // (a, b) violates rule as written
};

struct CheckResult {
  bool ok = true;
  std::vector<Violation> violations;
};

enum class CheckMode { FirstViolation, AllViolations };

struct CheckOptions {
  CheckMode mode = CheckMode::AllViolations;
  int threads = 1;
};

// Verdict over all ordered pairs of distinct member sets.  The scan works
// layer by layer: size pairs that layer_pair_feasible rules out are never
// enumerated, same-layer difference-type rules go through a subset-key
// collision pass, and everything else runs through the popcount kernels.
// The violation list is deterministic (independent of thread count).
CheckResult check_family(const Family& family, const RuleSet& rules,
                         const CheckOptions& options = {});
CheckResult check_family(const Family& family, const ConstraintSpec& rule,
                         const CheckOptions& options = {});

}  // namespace setfam

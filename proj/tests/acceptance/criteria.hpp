// One function per acceptance criterion.  Each returns pass/fail plus a short
// summary of what was measured.
#pragma once

#include <string>

namespace acceptance {

struct Result {
  bool pass = true;
  std::string detail;
};

Result pairing_round_trip();
Result procedures();
Result counter_fusion();
Result inductive_counting();
Result pushdown_complement();
Result counter_elimination();
Result complement_collapse();
Result equality_solver();
Result stack_state_complexity_count();
Result coherence();

}  // namespace acceptance

// Machine-to-machine transformations: fusing two counters into one encoded
// counter, reducing to four (three with a stack) counters, and replacing
// bounded counters by finite control.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "counterlab/machine.hpp"

namespace counterlab {

struct PairingOptions {
  std::uint64_t p = 0;          // encoding base; 0 selects default_step_cap(M, max_len) + 1
  std::size_t max_len = 4;      // input length the default base is sized for
};

/// Fuses counters a and b (0-based) into one counter holding a*p + b, with
/// three scratch counters.  Counter order of the result: the untouched
/// counters, then CT3 (the fused value), CT1, CT2, CT4.  A b-component that
/// reaches p sends the run to a rejecting sink.
MachineSpec pair_counters(const MachineSpec& m, int a, int b, const PairingOptions& opt = {});

struct ReductionReport {
  int rounds = 0;                    // pairwise fusion rounds of the iterated schedule
  std::vector<std::string> scratch;  // scratch registers shared by every fused counter
  std::uint64_t p = 0;
};

/// k >= 4 counters to 4: all counters are held as base-p digits of CT3.
/// k = 4 is returned unchanged.
MachineSpec reduce_counters(const MachineSpec& m, const PairingOptions& opt = {},
                            ReductionReport* report = nullptr);

/// Pushdown variant: k >= 3 counters to 3, the fourth register living on the
/// stack above a separator.  k = 3 is returned unchanged.
MachineSpec reduce_counters_pd(const MachineSpec& m, const PairingOptions& opt = {},
                               ReductionReport* report = nullptr);

/// Counter values in [0, r] become part of the state; an increment past r
/// leads to a rejecting sink.  Exactly |Q|*(r+1)^k states plus at most one sink.
MachineSpec eliminate_counters(const MachineSpec& m, std::uint64_t r);

/// Pairing rounds needed to bring k counters down to one encoded counter.
int fusion_rounds(int k);

}  // namespace counterlab

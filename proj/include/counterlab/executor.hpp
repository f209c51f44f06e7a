// Breadth-first exploration of configuration graphs: acceptance decisions,
// exact-step reachable layers, accepting-path counts and runtimes.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "counterlab/machine.hpp"

namespace counterlab {

struct RunBudget {
  std::uint64_t step_cap = 1000;
  std::uint64_t config_cap = 2'000'000;
};

/// Step cap (n*|x| + 2)^t where n is the machine's state complexity.
std::uint64_t default_step_cap(const MachineSpec& m, std::size_t input_length, int exponent = 3);
RunBudget default_budget(const MachineSpec& m, std::string_view x, int exponent = 3);

enum class Outcome { accept, reject, unknown };
std::string to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::unknown;
  std::vector<Configuration> witness;  // accepting path, initial configuration first
  std::string note;                    // why the verdict is unknown, when it is

  bool definite() const { return outcome != Outcome::unknown; }
};

/// Accept iff an accepting configuration is reachable in at most step_cap
/// steps; Reject iff the whole reachable graph was explored and holds no
/// accepting configuration; Unknown otherwise.
Verdict decide(const MachineSpec& m, std::string_view x, const RunBudget& budget);

struct Layer {
  std::vector<Configuration> configs;  // sorted
  bool exhausted = false;              // configuration cap hit
};

/// V_i: configurations reachable in exactly i steps.
Layer reachable_exact(const MachineSpec& m, std::string_view x, std::uint64_t i,
                      std::uint64_t config_cap = 2'000'000);

struct PathCount {
  std::uint64_t count = 0;
  bool saturated = false;    // count reached the limit
  bool lower_bound = false;  // live paths survived the step cap
};

/// Number of distinct accepting configuration sequences of length <= step_cap.
PathCount count_accepting_paths(const MachineSpec& m, std::string_view x, const RunBudget& budget,
                                std::uint64_t limit = 1'000'000);

struct Runtime {
  std::uint64_t steps = 0;  // longest halting (or stuck) path found
  bool unknown = false;     // a live path survived the cap
};

Runtime runtime_max(const MachineSpec& m, std::string_view x, const RunBudget& budget);

/// Replays a path through the step relation.
bool replay_path(const MachineSpec& m, std::string_view x, const std::vector<Configuration>& path);

}  // namespace counterlab

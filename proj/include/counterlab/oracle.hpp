// Ground truth by depth-first path enumeration.  Nothing here goes through
// Stepper or the executor: the oracle matches rules against configurations
// on its own.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "counterlab/executor.hpp"
#include "counterlab/families.hpp"
#include "counterlab/machine.hpp"

namespace counterlab {

/// Successors in rule-declaration order, found by scanning the whole rule list.
std::vector<Configuration> oracle_successors(const MachineSpec& m, std::string_view x,
                                             const Configuration& c);

struct OracleBudget {
  std::uint64_t cap = 1000;             // maximal path length
  std::uint64_t node_budget = 5'000'000;  // expansions before giving up
};

/// Accept on the first accepting path of length <= cap; Reject when every path
/// halts, sticks or closes a cycle within the cap; Unknown otherwise.
Verdict brute_force_decide(const MachineSpec& m, std::string_view x, const OracleBudget& budget);
Verdict brute_force_decide(const MachineSpec& m, std::string_view x, std::uint64_t cap);

struct Disagreement {
  std::string input;
  Outcome first = Outcome::unknown;
  Outcome second = Outcome::unknown;
};

struct EquivalenceReport {
  std::vector<Disagreement> disagreements;  // both definite and different
  std::vector<Disagreement> unknowns;       // at least one side unknown
  std::size_t checked = 0;

  bool equivalent() const { return disagreements.empty(); }
};

EquivalenceReport check_equivalence(const MachineSpec& m1, const MachineSpec& m2,
                                    const std::vector<std::string>& inputs, const OracleBudget& budget);

nlohmann::json to_json(const EquivalenceReport& r);

struct UnambiguityReport {
  bool unambiguous = true;
  bool complete = true;  // false when some enumeration ran out of budget
  std::optional<std::string> input;
  std::vector<std::vector<Configuration>> paths;  // two distinct accepting paths
};

/// Checks that every promised string of index n with length <= max_len has at
/// most one accepting path (paths are configuration sequences without repeats).
UnambiguityReport check_unambiguous(const MachineSpec& m, const PromiseFamily& family, std::uint64_t n,
                                    std::size_t max_len, const OracleBudget& budget);

/// Accepting paths of one input, stopping once `limit` are found.
std::vector<std::vector<Configuration>> enumerate_accepting_paths(const MachineSpec& m, std::string_view x,
                                                                  const OracleBudget& budget,
                                                                  std::size_t limit, bool* complete = nullptr);

}  // namespace counterlab

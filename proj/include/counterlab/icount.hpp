// Complementation of two-way counter automata by inductive counting: an exact
// mode computing the reachable layers outright, and the nondeterministic
// counting procedure run under sampled, exhaustive or informed choices.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "counterlab/executor.hpp"
#include "counterlab/machine.hpp"

namespace counterlab {

struct LayerCount {
  std::uint64_t i = 0;
  std::uint64_t count = 0;
  std::vector<Configuration> layer;  // sorted; exact mode only
};

struct ICOptions {
  std::uint64_t r = 0;  // number of layers; 0 selects the executor's step cap
  std::uint64_t config_cap = 2'000'000;
  bool keep_layers = false;
};

struct ICResult {
  Verdict verdict;  // Accept iff M rejects x
  std::vector<LayerCount> layers;
};

/// Exact mode: V_0, V_1, ... until a layer is empty or repeats an earlier one
/// (Accept), holds an accepting configuration (Reject), or r is reached (Unknown).
ICResult complement_decide_ic(const MachineSpec& m, std::string_view x, const ICOptions& opt = {});

/// N_0 .. N_r, with N_i = |V_i|.
std::vector<LayerCount> layer_counts(const MachineSpec& m, std::string_view x, std::uint64_t r,
                                     bool keep_layers = false, std::uint64_t config_cap = 2'000'000);

/// Overwrites the computed N̂ of one layer.
struct Corruption {
  std::uint64_t layer = 0;
  std::int64_t delta = 0;
};

enum class GuessStatus { aborted, accept, reject, unknown };
std::string to_string(GuessStatus s);

struct GuessRun {
  GuessStatus status = GuessStatus::aborted;
  std::string reason;                  // failed check, when aborted
  std::vector<std::uint64_t> counts;   // N̂_0, N̂_1, ... as computed by the run
};

/// One run of the counting procedure with seeded random choices.
GuessRun guessing_mode_run(const MachineSpec& m, std::string_view x, std::uint64_t r, std::uint64_t seed,
                           std::optional<Corruption> corrupt = std::nullopt);

struct ExhaustiveGuessReport {
  std::map<GuessStatus, double> runs;  // completed runs by outcome
  double aborted = 0;                  // aborted branches
  bool some(GuessStatus s) const;
};

/// Every branch of the counting procedure.  Path guesses are collapsed to
/// their outcome: a guessed path to C of length i succeeds on some branch iff
/// C is in V_i, and all failing branches abort.
ExhaustiveGuessReport exhaustive_guessing(const MachineSpec& m, std::string_view x, std::uint64_t r,
                                          std::optional<Corruption> corrupt = std::nullopt);

struct ICAudit {
  std::map<std::string, std::uint64_t> registers;  // name -> largest value held
  std::size_t used = 0;
  std::size_t bound = 0;  // 5k + 13
  GuessStatus status = GuessStatus::aborted;
  std::vector<std::uint64_t> counts;  // N̂_0, N̂_1, ... of the run

  nlohmann::json to_json() const;
};

/// Runs the counting procedure with the correct choices and reports the
/// named registers it touched.  r = 0 uses the number of layers the exact
/// mode examined.
ICAudit audit_ic(const MachineSpec& m, std::string_view x, std::uint64_t r = 0);

}  // namespace counterlab

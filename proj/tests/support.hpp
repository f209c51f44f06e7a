// Shared helpers for the unit and acceptance suites: seeded random machines,
// finite-graph filtering and the executor/oracle coherence ledger.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "counterlab/executor.hpp"
#include "counterlab/machine.hpp"

namespace testsupport {

using Rng = std::mt19937_64;
using counterlab::MachineSpec;
using counterlab::Outcome;

struct RandomShape {
  int states = 3;  // non-halting states; "acc" and "rej" are added
  int counters = 1;
  bool stack = false;
  int push_size = 1;
  int stack_symbols = 1;  // besides the bottom marker
  bool deterministic = false;
  std::vector<char> alphabet = {'0', '1'};
  int max_rules = 2;  // per (state, tape symbol)
  double inc = 0.3;
  double dec = 0.3;
  double halt = -1;  // chance a rule enters acc or rej; negative picks targets uniformly
};

MachineSpec random_machine(Rng& rng, const RandomShape& shape, const std::string& name);

struct GraphStats {
  bool finite = false;
  std::size_t configs = 0;
  std::uint32_t max_counter = 0;
  std::size_t max_stack = 0;
};

/// Full reachable graph, abandoned past config_cap.
GraphStats explore(const MachineSpec& m, std::string_view x, std::size_t config_cap);

/// Every input up to max_len has a finite reachable graph; reports the
/// largest counter value seen.
bool tame(const MachineSpec& m, std::size_t max_len, std::size_t config_cap, std::uint32_t* max_counter = nullptr);

/// Draws machines until one is tame.
MachineSpec sample_tame(Rng& rng, const RandomShape& shape, std::size_t max_len, std::size_t config_cap,
                        const std::string& name, std::uint32_t* max_counter = nullptr);

std::vector<std::string> all_inputs(const MachineSpec& m, std::size_t max_len);

/// Runs executor and oracle, records the pair in the global ledger and
/// returns the executor's verdict (or the oracle's when only it is definite).
Outcome coherent_decide(const MachineSpec& m, std::string_view x, std::uint64_t cap);

struct Coherence {
  std::size_t checked = 0;
  std::size_t both_definite = 0;
  std::vector<std::string> contradictions;
};

Coherence& coherence();

}  // namespace testsupport

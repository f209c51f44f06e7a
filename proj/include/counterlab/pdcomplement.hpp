// Complementation of slim counter pushdown automata through configuration
// intervals: surface configurations with bounded counters, the interval
// space and its enumeration, the two split conditions, derivability of
// intervals, and the work-stack refutation run.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "counterlab/executor.hpp"
#include "counterlab/machine.hpp"

namespace counterlab {

/// (q, head, stack top, counters); counters lie in [0, t_x].
struct Surface {
  int state = 0;
  int head = 0;
  int top = 0;
  std::vector<std::uint32_t> counters;

  friend bool operator==(const Surface&, const Surface&) = default;
  friend auto operator<=>(const Surface&, const Surface&) = default;
};

Surface surface(const Configuration& c);

/// (C, s, C', l, r): C' follows C after l steps at stack height r, passing
/// through s intermediate configurations of that height.
struct ConfInterval {
  Surface from;
  std::uint64_t s = 0;
  Surface to;
  std::uint64_t l = 0;
  std::uint64_t r = 0;

  bool basic() const { return s == 0; }
  friend bool operator==(const ConfInterval&, const ConfInterval&) = default;
  friend auto operator<=>(const ConfInterval&, const ConfInterval&) = default;
};

nlohmann::json to_json(const Surface& c);
nlohmann::json to_json(const ConfInterval& eta);

/// CONF x [0,t)  x CONF x [0,t)^2 in lexicographic order.
class IntervalSpace {
 public:
  IntervalSpace(const MachineSpec& m, std::size_t input_length, std::uint64_t t_x);
  IntervalSpace(int states, std::size_t input_length, int stack_symbols, int counters, std::uint64_t t_x);

  std::uint64_t conf_count() const { return conf_count_; }
  std::uint64_t t_x() const { return t_; }
  std::uint64_t size() const;  // |CONF|^2 * t_x^3

  bool in_range(const Surface& c) const;
  bool in_range(const ConfInterval& eta) const;

  std::uint64_t conf_index(const Surface& c) const;
  Surface conf_at(std::uint64_t i) const;

  std::uint64_t index(const ConfInterval& eta) const;
  ConfInterval at(std::uint64_t i) const;
  std::pair<ConfInterval, ConfInterval> pair_at(std::uint64_t i, std::uint64_t j) const;

  /// Streams intervals in index order until fn returns false.
  void for_each(const std::function<bool(std::uint64_t, const ConfInterval&)>& fn) const;

 private:
  int states_;
  int heads_;
  int gamma_;
  int k_;
  std::uint64_t t_;
  std::uint64_t conf_count_;
};

/// C |- C1 by a push, C2 |- C' by a pop exposing the top of C, and
/// l1 = l - 2.  Throws std::invalid_argument unless eta is basic with l >= 2.
bool cnd1(const ConfInterval& eta, const ConfInterval& eta1, const MachineSpec& m, std::string_view x);

/// C1 = C, C3 = C', s1 = 0, s2 = s - 1 and l = l1 + l2, with eta1 ending
/// where eta2 starts.  Throws std::invalid_argument unless s >= 1.
bool cnd2(const ConfInterval& eta, const ConfInterval& eta1, const ConfInterval& eta2, const MachineSpec& m,
          std::string_view x);

/// Surface steps of a slim machine with counters capped at t_x.
class SurfaceSteps {
 public:
  SurfaceSteps(const MachineSpec& m, std::string_view x, std::uint64_t t_x);

  /// Successors that push one symbol onto c.
  std::vector<Surface> pushes(const Surface& c) const;
  /// Successors that pop c's top, exposing `under`.
  std::vector<Surface> pops(const Surface& c, int under) const;

  const MachineSpec& machine() const { return stepper_.machine(); }
  std::uint64_t t_x() const { return t_; }

 private:
  Configuration concrete(const Surface& c, int under) const;
  Stepper stepper_;
  std::uint64_t t_;
};

/// Memoized derivability of intervals.
class IntervalSolver {
 public:
  IntervalSolver(const MachineSpec& m, std::string_view x, std::uint64_t t_x);
  ~IntervalSolver();

  bool derivable(const ConfInterval& eta);
  /// Surfaces C' with (C, 0, C', l, .) derivable.
  const std::vector<Surface>& hills(const Surface& c, std::uint64_t l);
  std::size_t memo_size() const;
  const SurfaceSteps& steps() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// The roots (C_0, 0, C_fin, l, 0) for l = 0..t_x of a slim machine.
std::vector<ConfInterval> root_intervals(const MachineSpec& slim, std::uint64_t t_x);

struct PDResult {
  Verdict verdict;  // Accept iff M rejects x
  std::uint64_t t_x = 0;
  std::size_t memo = 0;
};

/// Normalizes to slim form, takes t_x from runtime_max and accepts iff no
/// root interval is derivable.
PDResult complement_pd(const MachineSpec& m, std::string_view x, const RunBudget& budget);
Verdict complement_decide_pd(const MachineSpec& m, std::string_view x, const RunBudget& budget);

struct Stage3Event {
  std::string phase;
  ConfInterval popped;
  std::size_t pushed = 0;
  std::size_t depth = 0;
  // Stack rounds after the step as (round, run length) blocks, bottom first.
  std::vector<std::pair<std::uint64_t, std::size_t>> blocks;

  nlohmann::json to_json() const;
};

struct Stage3Options {
  std::uint64_t step_budget = 200'000;
  std::size_t trace_limit = 10'000;  // events kept
  std::size_t stack_limit = 2'000'000;
};

struct Stage3Run {
  Outcome outcome = Outcome::unknown;  // accept: every root refuted
  std::uint64_t steps = 0;
  std::size_t max_depth = 0;
  bool consecutive = true;  // equal rounds stayed contiguous on the stack
  std::vector<Stage3Event> trace;
};

/// Work-stack refutation of the roots of a slim machine.  Basic intervals are
/// replaced by every interval satisfying cnd1; for the others each pair
/// satisfying cnd2 contributes the member that the solver cannot derive (the
/// first one when both derive).  A leaf (C, 0, C, 0, r) ends the run with reject.
Stage3Run stage3_run(const MachineSpec& slim, std::string_view x, std::uint64_t t_x, const Stage3Options& opt = {});

/// True when every round value occupies one contiguous block.
bool rounds_consecutive(const std::vector<std::uint64_t>& rounds);

}  // namespace counterlab

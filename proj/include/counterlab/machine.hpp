// Machine descriptions for two-way counter automata and counter pushdown
// automata: domain types, the JSON machine format, the one-step relation and
// the state-complexity metrics.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace counterlab {

inline constexpr char kLeftEnd = '>';
inline constexpr char kRightEnd = '<';
inline constexpr std::string_view kBottom = "\xE2\x8A\xA5";  // "⊥"

enum class Mode { deterministic, nondeterministic, unambiguous_claimed };

enum class Guard : std::uint8_t { any, zero, nonzero };
enum class CounterOp : std::uint8_t { noop, inc, dec };

struct StackOp {
  enum class Kind : std::uint8_t { none, pop, push };
  Kind kind = Kind::none;
  std::vector<int> symbols;  // push only; last element ends on top

  static StackOp none() { return {}; }
  static StackOp pop() { return {Kind::pop, {}}; }
  static StackOp push(std::vector<int> w) { return {Kind::push, std::move(w)}; }
  friend bool operator==(const StackOp&, const StackOp&) = default;
};

struct TransitionRule {
  int from = 0;
  char read = kLeftEnd;
  std::vector<Guard> guards;    // one per counter
  std::optional<int> stack_top;  // stack symbol index; nullopt matches any top
  int to = 0;
  int move = 0;                 // -1, 0, +1
  std::vector<CounterOp> ops;   // one per counter
  StackOp stack_op;

  friend bool operator==(const TransitionRule&, const TransitionRule&) = default;
};

/// Stack alphabet; index 0 is always the bottom marker.
struct StackSpec {
  std::vector<std::string> alphabet;
  int push_size = 1;
  friend bool operator==(const StackSpec&, const StackSpec&) = default;
};

/// Where a transformed machine came from.
struct Provenance {
  std::string derived_from;
  std::string transform;
  nlohmann::json parameters = nlohmann::json::object();
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct MachineSpec {
  std::string name;
  Mode mode = Mode::nondeterministic;
  std::vector<std::string> states;
  std::vector<char> alphabet;
  int counters = 0;
  std::optional<StackSpec> stack;
  int initial = 0;
  std::vector<int> accepting;
  std::vector<int> rejecting;
  std::vector<TransitionRule> transitions;
  // Permits head move 0 in a counter-free, stackless machine (produced by
  // counter elimination, which keeps the stationary moves of its source).
  bool allow_stationary = false;
  std::optional<Provenance> provenance;

  std::size_t state_count() const { return states.size(); }
  bool has_stack() const { return stack.has_value(); }
  bool is_accepting(int q) const;
  bool is_rejecting(int q) const;
  bool is_halting(int q) const { return is_accepting(q) || is_rejecting(q); }
  int state_index(std::string_view name) const;  // -1 when absent
  int stack_index(std::string_view symbol) const;  // -1 when absent

  friend bool operator==(const MachineSpec&, const MachineSpec&) = default;
};

/// Thrown for malformed or inconsistent machine documents.
class MachineError : public std::runtime_error {
 public:
  enum class Kind { syntax, semantic };
  MachineError(Kind kind, std::string message, std::optional<std::size_t> byte = std::nullopt)
      : std::runtime_error(std::move(message)), kind_(kind), byte_(byte) {}
  Kind kind() const { return kind_; }
  std::optional<std::size_t> byte_position() const { return byte_; }

 private:
  Kind kind_;
  std::optional<std::size_t> byte_;
};

/// Full configuration: counters hold exact values and the stack is stored
/// bottom first (element 0 is the bottom marker).
struct Configuration {
  int state = 0;
  int head = 0;
  std::vector<std::uint32_t> counters;
  std::vector<std::uint16_t> stack;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const noexcept;
};

/// Zero/nonzero view of a configuration together with the stack top.
struct SurfaceView {
  int state = 0;
  int head = 0;
  std::vector<bool> counter_nonzero;
  std::optional<int> stack_top;
  friend bool operator==(const SurfaceView&, const SurfaceView&) = default;
};

SurfaceView surface_of(const Configuration& c);

// ---- document format -------------------------------------------------------

MachineSpec parse_machine(std::string_view document);
MachineSpec load_machine(const std::string& path);
MachineSpec machine_from_json(const nlohmann::json& doc);
nlohmann::json machine_to_json(const MachineSpec& m);
std::string serialize_machine(const MachineSpec& m);  // pretty, stable

/// Checks every invariant; throws MachineError(semantic) naming the rule.
void validate(const MachineSpec& m);

// ---- semantics --------------------------------------------------------------

/// Tape contents ">x<" with endmarkers; throws if x uses a symbol outside Σ.
std::string make_tape(const MachineSpec& m, std::string_view x);

Configuration initial_configuration(const MachineSpec& m);
bool is_valid_configuration(const MachineSpec& m, std::string_view x, const Configuration& c);

/// Rule-indexed successor generator for one (machine, input) pair.
class Stepper {
 public:
  Stepper(const MachineSpec& m, std::string_view x);

  const MachineSpec& machine() const { return *m_; }
  const std::string& tape() const { return tape_; }

  bool applicable(const TransitionRule& r, const Configuration& c) const;
  Configuration apply(const TransitionRule& r, const Configuration& c) const;

  /// Successors in rule-declaration order (may contain duplicates when two
  /// rules lead to the same configuration).
  void successors(const Configuration& c, std::vector<Configuration>& out) const;
  std::vector<Configuration> successors(const Configuration& c) const;

  /// True when the state is not halting and no rule applies.
  bool stuck(const Configuration& c) const;

 private:
  const MachineSpec* m_;
  std::string tape_;
  std::vector<std::vector<int>> by_state_;
};

/// The exact set of one-step successors (duplicates removed, sorted).
std::vector<Configuration> step_relation(const MachineSpec& m, std::string_view x,
                                         const Configuration& c);

std::size_t state_complexity(const MachineSpec& m);

/// |Q| * |Γ^{<=e}|; throws std::invalid_argument for stackless machines.
std::uint64_t stack_state_complexity(const MachineSpec& m);

/// Rewrites a pushdown machine into slim form: push size 1, every move pushes
/// or pops exactly one symbol, a dummy bottom guard is placed above the
/// bottom marker, and before halting the machine empties its counters and its
/// stack and parks the head on cell 0.  Accepting and rejecting sets become
/// singletons.  Machines already produced by this function are returned as is.
MachineSpec normalize_slim(const MachineSpec& n);

bool is_slim(const MachineSpec& m);

std::string to_string(Mode m);
std::string to_string(const Configuration& c);

}  // namespace counterlab

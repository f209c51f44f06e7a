// Counter programs: a small IR over named counters, a head on a read-only
// tape and an optional stack, with an interpreter, a static guard check, the
// pairing procedures and lowering into machine rules.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "counterlab/builder.hpp"
#include "counterlab/machine.hpp"

namespace counterlab {

enum class Op : std::uint8_t {
  inc,        // counter
  dec,        // counter
  jump_zero,  // counter, target
  jump,       // target
  left,
  right,
  jump_symbol,  // symbol, target
  choice,       // target (or fall through)
  exit,         // code
  push,         // stack symbol
  pop,
  jump_top,  // stack symbol, target
};

struct Instr {
  Op op = Op::exit;
  int arg = 0;      // counter index, exit code or stack symbol index
  int target = -1;  // jump target
  char symbol = 0;  // tape symbol for jump_symbol

  friend bool operator==(const Instr&, const Instr&) = default;
};

struct CounterProgram {
  std::vector<std::string> counters;
  std::vector<std::string> stack_symbols;
  std::vector<Instr> code;

  int counter(const std::string& name) const;  // -1 when absent
};

class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Emits instructions with forward labels.
class ProgramBuilder {
 public:
  explicit ProgramBuilder(std::vector<std::string> counters, std::vector<std::string> stack_symbols = {});

  int label();
  void bind(int label);
  int c(const std::string& name) const;
  int sym(const std::string& name) const;

  void inc(const std::string& ctr) { emit({Op::inc, c(ctr)}); }
  void dec(const std::string& ctr) { emit({Op::dec, c(ctr)}); }
  void jump_zero(const std::string& ctr, int l) { emit({Op::jump_zero, c(ctr), l}); }
  void jump(int l) { emit({Op::jump, 0, l}); }
  void left() { emit({Op::left}); }
  void right() { emit({Op::right}); }
  void jump_symbol(char s, int l) { emit({Op::jump_symbol, 0, l, s}); }
  void choice(int l) { emit({Op::choice, 0, l}); }
  void exit(int code) { emit({Op::exit, code}); }
  void push(const std::string& s) { emit({Op::push, sym(s)}); }
  void pop() { emit({Op::pop}); }
  void jump_top(const std::string& s, int l) { emit({Op::jump_top, sym(s), l}); }

  /// Moves `from` into `to` (from ends empty).
  void transfer(const std::string& from, const std::string& to);
  /// Empties a counter.
  void clear(const std::string& ctr);

  CounterProgram finish();

 private:
  void emit(Instr i) { prog_.code.push_back(i); }
  CounterProgram prog_;
  std::vector<int> label_pos_;
};

/// Throws ProgramError when a dec is not dominated by a nonzero fact, a jump
/// target is out of range or control can fall off the end.
void check_program(const CounterProgram& p);

struct CounterEnv {
  std::vector<std::uint64_t> counters;  // aligned with the program's counter names
  int head = 0;
  std::string tape;  // with endmarkers
  std::vector<int> stack;  // program stack symbols, bottom first

  static CounterEnv for_input(const CounterProgram& p, std::string_view x, int head = 0);
  std::uint64_t get(const CounterProgram& p, const std::string& name) const;
  void set(const CounterProgram& p, const std::string& name, std::uint64_t v);
};

struct AuditReport {
  std::size_t touched = 0;                 // distinct counters used
  std::vector<std::string> nonempty_at_exit;
  std::uint64_t instructions = 0;

  nlohmann::json to_json() const;
};

struct ProgramRun {
  CounterEnv env;
  int exit_code = 0;
  AuditReport audit;
};

/// Deterministic interpretation; a choice instruction is an error.  Throws
/// ProgramError on budget exhaustion, dec of zero, head or stack misuse.
ProgramRun run_counter_program(const CounterProgram& p, CounterEnv env, std::uint64_t budget = 100'000'000);

/// Every run obtained by resolving choices both ways.
std::vector<ProgramRun> run_counter_program_exhaustive(const CounterProgram& p, const CounterEnv& env,
                                                       std::uint64_t budget = 1'000'000);

nlohmann::json program_to_json(const CounterProgram& p);
CounterProgram program_from_json(const nlohmann::json& j);

// ---- pairing ----------------------------------------------------------------

std::uint64_t pair_encode(std::uint64_t i1, std::uint64_t i2, std::uint64_t p);
std::pair<std::uint64_t, std::uint64_t> pair_decode(std::uint64_t v, std::uint64_t p);

/// The scratch layout shared by the pairing procedures.
std::vector<std::string> pairing_counters();  // CT1..CT4

/// CT2 := (n*|x|)^t using CT1, CT4 and the head; the head is restored.
CounterProgram produce_p_program(std::uint64_t n, int t);
/// Exit code 2*[i1 == 0] + [i2 == 0]; CT3 and CT2 are restored.
CounterProgram zero_test_program();
/// Adds or subtracts one on component j (1 or 2).  Exit 1 signals a dec on
/// an empty CT3, which the caller's zero test rules out.
CounterProgram update_program(int j, CounterOp op);

/// target := value by binary doubling through `scratch` (both empty on entry).
void emit_constant(ProgramBuilder& b, std::uint64_t value, const std::string& target, const std::string& scratch);
/// target := p^e by repeated multiplication through `scratch`.
void emit_power(ProgramBuilder& b, std::uint64_t p, int e, const std::string& target, const std::string& scratch);

struct ProcResult {
  CounterEnv env;
  AuditReport audit;
};

ProcResult proc_produce_p(std::uint64_t n, std::string_view x, int t, int head = 0);

struct ZeroFlags {
  bool first_zero = false;
  bool second_zero = false;
  AuditReport audit;
};

ZeroFlags proc_zero_test(CounterEnv& env);

/// Throws ProgramError on dec of a zero component or a component reaching p.
AuditReport proc_update(CounterEnv& env, int j, CounterOp op);

/// Rewrites every use of `counter` into pushes and pops of "1" above a "#"
/// separator; a prologue pushes the separator and the epilogue pops it.
CounterProgram stack_as_counter(const CounterProgram& p, const std::string& counter);

// ---- lowering -----------------------------------------------------------------

/// How program names map onto a machine.
struct LoweringBinding {
  std::map<std::string, int> counters;                       // name -> machine counter
  std::map<std::string, std::pair<int, int>> stack_counters;  // name -> (unit, separator) stack symbols
  std::map<std::string, int> stack_symbols;                   // program symbol -> machine symbol
  int error_state = -1;                                       // target of negative exit codes
};

/// Adds states "<prefix>.<i>" and their rules; exit code c continues in
/// exits[c].  Returns the entry state.
int lower_program(MachineBuilder& b, const CounterProgram& p, const LoweringBinding& binding,
                  const std::string& prefix, const std::vector<int>& exits);

}  // namespace counterlab

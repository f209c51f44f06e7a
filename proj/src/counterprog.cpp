#include "counterlab/counterprog.hpp"

#include <algorithm>
#include <deque>

namespace counterlab {

int CounterProgram::counter(const std::string& name) const {
  auto it = std::find(counters.begin(), counters.end(), name);
  return it == counters.end() ? -1 : static_cast<int>(it - counters.begin());
}

ProgramBuilder::ProgramBuilder(std::vector<std::string> counters, std::vector<std::string> stack_symbols) {
  prog_.counters = std::move(counters);
  prog_.stack_symbols = std::move(stack_symbols);
}

int ProgramBuilder::label() {
  label_pos_.push_back(-1);
  return static_cast<int>(label_pos_.size()) - 1;
}

void ProgramBuilder::bind(int label) { label_pos_.at(static_cast<std::size_t>(label)) = static_cast<int>(prog_.code.size()); }

int ProgramBuilder::c(const std::string& name) const {
  const int i = prog_.counter(name);
  if (i < 0) throw ProgramError("unknown counter '" + name + "'");
  return i;
}

int ProgramBuilder::sym(const std::string& name) const {
  auto it = std::find(prog_.stack_symbols.begin(), prog_.stack_symbols.end(), name);
  if (it == prog_.stack_symbols.end()) throw ProgramError("unknown stack symbol '" + name + "'");
  return static_cast<int>(it - prog_.stack_symbols.begin());
}

void ProgramBuilder::transfer(const std::string& from, const std::string& to) {
  const int top = label(), done = label();
  bind(top);
  jump_zero(from, done);
  dec(from);
  inc(to);
  jump(top);
  bind(done);
}

void ProgramBuilder::clear(const std::string& ctr) {
  const int top = label(), done = label();
  bind(top);
  jump_zero(ctr, done);
  dec(ctr);
  jump(top);
  bind(done);
}

CounterProgram ProgramBuilder::finish() {
  for (auto& in : prog_.code) {
    const bool jumps = in.op == Op::jump_zero || in.op == Op::jump || in.op == Op::jump_symbol ||
                       in.op == Op::choice || in.op == Op::jump_top;
    if (!jumps) continue;
    const int pos = label_pos_.at(static_cast<std::size_t>(in.target));
    if (pos < 0) throw ProgramError("unbound label");
    in.target = pos;
  }
  check_program(prog_);
  return std::move(prog_);
}

// ---- static check -------------------------------------------------------------

void check_program(const CounterProgram& p) {
  const std::size_t n = p.code.size();
  if (n == 0) return;
  const std::size_t k = p.counters.size();
  // Counters known to be nonzero on entry to each instruction (must analysis).
  std::vector<std::optional<std::vector<bool>>> facts(n);
  std::deque<std::size_t> work;
  auto flow = [&](std::size_t to, const std::vector<bool>& f) {
    if (to >= n) throw ProgramError("control falls off the end of the program");
    if (!facts[to]) {
      facts[to] = f;
      work.push_back(to);
      return;
    }
    bool changed = false;
    for (std::size_t j = 0; j < k; ++j) {
      if ((*facts[to])[j] && !f[j]) {
        (*facts[to])[j] = false;
        changed = true;
      }
    }
    if (changed) work.push_back(to);
  };
  flow(0, std::vector<bool>(k, false));
  while (!work.empty()) {
    const std::size_t i = work.front();
    work.pop_front();
    const Instr& in = p.code[i];
    auto f = *facts[i];
    auto target = [&]() {
      if (in.target < 0 || static_cast<std::size_t>(in.target) >= n)
        throw ProgramError("jump target out of range at instruction " + std::to_string(i));
      return static_cast<std::size_t>(in.target);
    };
    switch (in.op) {
      case Op::inc: f[in.arg] = true; flow(i + 1, f); break;
      case Op::dec: f[in.arg] = false; flow(i + 1, f); break;
      case Op::jump_zero: {
        auto z = f;
        z[in.arg] = false;
        flow(target(), z);
        f[in.arg] = true;
        flow(i + 1, f);
        break;
      }
      case Op::jump: flow(target(), f); break;
      case Op::jump_symbol:
      case Op::choice:
      case Op::jump_top: flow(target(), f); flow(i + 1, f); break;
      case Op::exit: break;
      default: flow(i + 1, f); break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Instr& in = p.code[i];
    if (in.op == Op::dec && facts[i] && !(*facts[i])[in.arg])
      throw ProgramError("dec " + p.counters[in.arg] + " at instruction " + std::to_string(i) +
                         " is not guarded by a nonzero test");
  }
}

// ---- interpretation -------------------------------------------------------------

CounterEnv CounterEnv::for_input(const CounterProgram& p, std::string_view x, int head) {
  CounterEnv e;
  e.counters.assign(p.counters.size(), 0);
  e.tape = std::string(1, kLeftEnd) + std::string(x) + kRightEnd;
  e.head = head;
  return e;
}

std::uint64_t CounterEnv::get(const CounterProgram& p, const std::string& name) const {
  const int i = p.counter(name);
  if (i < 0) throw ProgramError("unknown counter '" + name + "'");
  return counters.at(static_cast<std::size_t>(i));
}

void CounterEnv::set(const CounterProgram& p, const std::string& name, std::uint64_t v) {
  const int i = p.counter(name);
  if (i < 0) throw ProgramError("unknown counter '" + name + "'");
  counters.at(static_cast<std::size_t>(i)) = v;
}

nlohmann::json AuditReport::to_json() const {
  return {{"touched", touched}, {"nonempty_at_exit", nonempty_at_exit}, {"instructions", instructions}};
}

namespace {

struct Machine {
  const CounterProgram& p;
  std::vector<bool> touched;

  // Executes one instruction; returns the next pc.  Choice is resolved by `take`.
  std::size_t step(std::size_t pc, CounterEnv& e, bool take) {
    const Instr& in = p.code[pc];
    switch (in.op) {
      case Op::inc:
        touched[in.arg] = true;
        ++e.counters[in.arg];
        return pc + 1;
      case Op::dec:
        touched[in.arg] = true;
        if (e.counters[in.arg] == 0) throw ProgramError("dec of empty counter " + p.counters[in.arg]);
        --e.counters[in.arg];
        return pc + 1;
      case Op::jump_zero:
        touched[in.arg] = true;
        return e.counters[in.arg] == 0 ? in.target : pc + 1;
      case Op::jump: return in.target;
      case Op::left:
        if (e.head == 0) throw ProgramError("head moved past the left endmarker");
        --e.head;
        return pc + 1;
      case Op::right:
        if (e.head + 1 >= static_cast<int>(e.tape.size())) throw ProgramError("head moved past the right endmarker");
        ++e.head;
        return pc + 1;
      case Op::jump_symbol: return e.tape.at(e.head) == in.symbol ? in.target : pc + 1;
      case Op::choice: return take ? in.target : pc + 1;
      case Op::push: e.stack.push_back(in.arg); return pc + 1;
      case Op::pop:
        if (e.stack.empty()) throw ProgramError("pop of empty stack");
        e.stack.pop_back();
        return pc + 1;
      case Op::jump_top: return !e.stack.empty() && e.stack.back() == in.arg ? in.target : pc + 1;
      case Op::exit: break;
    }
    return pc;
  }

  AuditReport audit(const CounterEnv& e, std::uint64_t steps) const {
    AuditReport a;
    a.touched = static_cast<std::size_t>(std::count(touched.begin(), touched.end(), true));
    for (std::size_t j = 0; j < p.counters.size(); ++j)
      if (e.counters[j] != 0) a.nonempty_at_exit.push_back(p.counters[j]);
    a.instructions = steps;
    return a;
  }
};

}  // namespace

ProgramRun run_counter_program(const CounterProgram& p, CounterEnv env, std::uint64_t budget) {
  Machine m{p, std::vector<bool>(p.counters.size(), false)};
  if (env.counters.size() != p.counters.size()) throw ProgramError("environment does not match the program");
  ProgramRun run;
  if (p.code.empty()) {
    run.env = std::move(env);
    run.audit = m.audit(run.env, 0);
    return run;
  }
  std::size_t pc = 0;
  std::uint64_t steps = 0;
  while (p.code.at(pc).op != Op::exit) {
    if (++steps > budget) throw ProgramError("step budget exhausted");
    if (p.code[pc].op == Op::choice) throw ProgramError("choice in deterministic run");
    pc = m.step(pc, env, false);
    if (pc >= p.code.size()) throw ProgramError("control fell off the end");
  }
  run.exit_code = p.code[pc].arg;
  run.env = std::move(env);
  run.audit = m.audit(run.env, steps);
  return run;
}

std::vector<ProgramRun> run_counter_program_exhaustive(const CounterProgram& p, const CounterEnv& env,
                                                       std::uint64_t budget) {
  std::vector<ProgramRun> out;
  if (p.code.empty()) {
    out.push_back(run_counter_program(p, env));
    return out;
  }
  struct Branch {
    std::size_t pc;
    CounterEnv env;
    std::uint64_t steps;
    std::vector<bool> touched;
  };
  std::vector<Branch> work{{0, env, 0, std::vector<bool>(p.counters.size(), false)}};
  std::uint64_t total = 0;
  while (!work.empty()) {
    Branch br = std::move(work.back());
    work.pop_back();
    Machine m{p, std::move(br.touched)};
    while (p.code.at(br.pc).op != Op::exit) {
      if (++total > budget) throw ProgramError("step budget exhausted");
      ++br.steps;
      if (p.code[br.pc].op == Op::choice) {
        Branch other{static_cast<std::size_t>(p.code[br.pc].target), br.env, br.steps, m.touched};
        work.push_back(std::move(other));
      }
      br.pc = m.step(br.pc, br.env, false);
      if (br.pc >= p.code.size()) throw ProgramError("control fell off the end");
    }
    ProgramRun run;
    run.exit_code = p.code[br.pc].arg;
    run.audit = m.audit(br.env, br.steps);
    run.env = std::move(br.env);
    out.push_back(std::move(run));
  }
  return out;
}

// ---- JSON ---------------------------------------------------------------------

namespace {

constexpr const char* kOpNames[] = {"inc", "dec", "jz", "jmp", "left", "right",
                                    "jsym", "choice", "exit", "push", "pop", "jtop"};

}  // namespace

nlohmann::json program_to_json(const CounterProgram& p) {
  auto code = nlohmann::json::array();
  for (const auto& in : p.code) {
    nlohmann::json row = {{"op", kOpNames[static_cast<int>(in.op)]}};
    switch (in.op) {
      case Op::inc:
      case Op::dec: row["counter"] = p.counters[in.arg]; break;
      case Op::jump_zero: row["counter"] = p.counters[in.arg]; row["target"] = in.target; break;
      case Op::jump:
      case Op::choice: row["target"] = in.target; break;
      case Op::jump_symbol: row["symbol"] = std::string(1, in.symbol); row["target"] = in.target; break;
      case Op::exit: row["code"] = in.arg; break;
      case Op::push: row["symbol"] = p.stack_symbols[in.arg]; break;
      case Op::jump_top: row["symbol"] = p.stack_symbols[in.arg]; row["target"] = in.target; break;
      default: break;
    }
    code.push_back(std::move(row));
  }
  return {{"counters", p.counters}, {"stack_symbols", p.stack_symbols}, {"code", code}};
}

CounterProgram program_from_json(const nlohmann::json& j) {
  CounterProgram p;
  p.counters = j.at("counters").get<std::vector<std::string>>();
  if (j.contains("stack_symbols")) p.stack_symbols = j.at("stack_symbols").get<std::vector<std::string>>();
  auto index_of = [](const std::vector<std::string>& v, const std::string& s) {
    auto it = std::find(v.begin(), v.end(), s);
    if (it == v.end()) throw ProgramError("undeclared name '" + s + "'");
    return static_cast<int>(it - v.begin());
  };
  for (const auto& row : j.at("code")) {
    Instr in;
    const auto name = row.at("op").get<std::string>();
    auto it = std::find(std::begin(kOpNames), std::end(kOpNames), name);
    if (it == std::end(kOpNames)) throw ProgramError("unknown instruction '" + name + "'");
    in.op = static_cast<Op>(it - std::begin(kOpNames));
    if (row.contains("counter")) in.arg = index_of(p.counters, row["counter"].get<std::string>());
    if (row.contains("target")) in.target = row["target"].get<int>();
    if (row.contains("code")) in.arg = row["code"].get<int>();
    if (row.contains("symbol")) {
      const auto s = row["symbol"].get<std::string>();
      if (in.op == Op::jump_symbol) {
        if (s.size() != 1) throw ProgramError("tape symbol must be one character");
        in.symbol = s[0];
      } else {
        in.arg = index_of(p.stack_symbols, s);
      }
    }
    p.code.push_back(in);
  }
  check_program(p);
  return p;
}

}  // namespace counterlab

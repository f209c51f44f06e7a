#include <algorithm>
#include <set>

#include "counterlab/counterprog.hpp"

namespace counterlab {

std::uint64_t pair_encode(std::uint64_t i1, std::uint64_t i2, std::uint64_t p) {
  if (p == 0 || i1 >= p || i2 >= p) throw std::out_of_range("pair component outside [0, p)");
  return i1 * p + i2;
}

std::pair<std::uint64_t, std::uint64_t> pair_decode(std::uint64_t v, std::uint64_t p) {
  if (p == 0 || v >= p * p) throw std::out_of_range("encoded value outside [0, p^2)");
  return {v / p, v % p};
}

std::vector<std::string> pairing_counters() { return {"CT1", "CT2", "CT3", "CT4"}; }

namespace {

// Adds |x| to `into` by a sweep from cell 0 to the right endmarker and back.
void sweep(ProgramBuilder& b, const std::string& into) {
  const int fwd = b.label(), back = b.label(), home = b.label();
  b.bind(fwd);
  b.right();
  b.jump_symbol(kRightEnd, back);
  b.inc(into);
  b.jump(fwd);
  b.bind(back);
  b.jump_symbol(kLeftEnd, home);
  b.left();
  b.jump(back);
  b.bind(home);
}

}  // namespace

CounterProgram produce_p_program(std::uint64_t n, int t) {
  if (t < 1) throw ProgramError("exponent must be at least 1");
  ProgramBuilder b(pairing_counters());
  // Remember the head position in CT4.
  const int save = b.label(), saved = b.label();
  b.bind(save);
  b.jump_symbol(kLeftEnd, saved);
  b.left();
  b.inc("CT4");
  b.jump(save);
  b.bind(saved);

  for (std::uint64_t i = 0; i < n; ++i) sweep(b, "CT2");
  for (int round = 1; round < t; ++round) {
    b.transfer("CT2", "CT1");
    const int loop = b.label(), done = b.label();
    b.bind(loop);
    b.jump_zero("CT1", done);
    b.dec("CT1");
    for (std::uint64_t i = 0; i < n; ++i) sweep(b, "CT2");
    b.jump(loop);
    b.bind(done);
  }

  const int restore = b.label(), restored = b.label();
  b.bind(restore);
  b.jump_zero("CT4", restored);
  b.dec("CT4");
  b.right();
  b.jump(restore);
  b.bind(restored);
  b.exit(0);
  return b.finish();
}

CounterProgram zero_test_program() {
  ProgramBuilder b(pairing_counters());
  const int both = b.label(), exact = b.label();
  const int block[2] = {b.label(), b.label()};
  const int full[2] = {b.label(), b.label()};
  const int partial[2] = {b.label(), b.label()};
  b.jump_zero("CT3", both);
  // Peel blocks of p off CT3 into CT4; block[1] is entered once a full block
  // has been seen, i.e. i1 > 0.
  for (int f = 0; f < 2; ++f) {
    b.bind(block[f]);
    b.jump_zero("CT2", full[f]);
    b.jump_zero("CT3", partial[f]);
    b.dec("CT2");
    b.inc("CT1");
    b.dec("CT3");
    b.inc("CT4");
    b.jump(block[f]);
    b.bind(full[f]);
    b.transfer("CT1", "CT2");
    b.jump_zero("CT3", exact);
    b.jump(block[1]);
    b.bind(partial[f]);
    b.transfer("CT1", "CT2");
    b.transfer("CT4", "CT3");
    b.exit(f == 0 ? 2 : 0);
  }
  b.bind(exact);
  b.transfer("CT4", "CT3");
  b.exit(1);
  b.bind(both);
  b.exit(3);
  return b.finish();
}

CounterProgram update_program(int j, CounterOp op) {
  if ((j != 1 && j != 2) || op == CounterOp::noop) throw ProgramError("update needs j in {1,2} and inc or dec");
  ProgramBuilder b(pairing_counters());
  const int err = b.label();
  if (j == 2) {
    if (op == CounterOp::inc) {
      b.inc("CT3");
    } else {
      b.jump_zero("CT3", err);
      b.dec("CT3");
    }
    b.exit(0);
    b.bind(err);
    b.exit(1);
    return b.finish();
  }
  // j = 1: add or subtract p, using CT1 to restore CT2.
  const int loop = b.label(), done = b.label();
  b.bind(loop);
  b.jump_zero("CT2", done);
  if (op == CounterOp::dec) b.jump_zero("CT3", err);
  b.dec("CT2");
  b.inc("CT1");
  if (op == CounterOp::inc) b.inc("CT3");
  else b.dec("CT3");
  b.jump(loop);
  b.bind(done);
  b.transfer("CT1", "CT2");
  b.exit(0);
  b.bind(err);
  b.transfer("CT1", "CT2");
  b.exit(1);
  return b.finish();
}

void emit_constant(ProgramBuilder& b, std::uint64_t value, const std::string& target, const std::string& scratch) {
  if (value == 0) return;
  int bit = 63;
  while (!((value >> bit) & 1)) --bit;
  b.inc(target);
  for (--bit; bit >= 0; --bit) {
    b.transfer(target, scratch);
    const int loop = b.label(), done = b.label();
    b.bind(loop);
    b.jump_zero(scratch, done);
    b.dec(scratch);
    b.inc(target);
    b.inc(target);
    b.jump(loop);
    b.bind(done);
    if ((value >> bit) & 1) b.inc(target);
  }
}

void emit_power(ProgramBuilder& b, std::uint64_t p, int e, const std::string& target, const std::string& scratch) {
  b.inc(target);
  for (int i = 0; i < e; ++i) {
    b.transfer(target, scratch);
    const int loop = b.label(), done = b.label();
    b.bind(loop);
    b.jump_zero(scratch, done);
    b.dec(scratch);
    for (std::uint64_t u = 0; u < p; ++u) b.inc(target);
    b.jump(loop);
    b.bind(done);
  }
}

ProcResult proc_produce_p(std::uint64_t n, std::string_view x, int t, int head) {
  const auto prog = produce_p_program(n, t);
  auto run = run_counter_program(prog, CounterEnv::for_input(prog, x, head));
  return {std::move(run.env), run.audit};
}

namespace {

const CounterProgram& zero_test_cached() {
  static const CounterProgram p = zero_test_program();
  return p;
}

}  // namespace

ZeroFlags proc_zero_test(CounterEnv& env) {
  const auto& prog = zero_test_cached();
  auto run = run_counter_program(prog, env);
  env = std::move(run.env);
  return {(run.exit_code & 2) != 0, (run.exit_code & 1) != 0, run.audit};
}

AuditReport proc_update(CounterEnv& env, int j, CounterOp op) {
  const auto prog = update_program(j, op);
  const std::uint64_t p = env.get(prog, "CT2");
  const auto [i1, i2] = pair_decode(env.get(prog, "CT3"), p);
  const std::uint64_t comp = j == 1 ? i1 : i2;
  if (op == CounterOp::dec && comp == 0) throw ProgramError("dec on an empty pair component");
  if (op == CounterOp::inc && comp + 1 >= p) throw ProgramError("pair component reached p");
  auto run = run_counter_program(prog, env);
  if (run.exit_code != 0) throw ProgramError("update failed");
  env = std::move(run.env);
  return run.audit;
}

// ---- stack as counter -------------------------------------------------------

CounterProgram stack_as_counter(const CounterProgram& p, const std::string& counter) {
  const int target = p.counter(counter);
  if (target < 0) throw ProgramError("unknown counter '" + counter + "'");
  std::vector<std::string> counters;
  for (const auto& c : p.counters)
    if (c != counter) counters.push_back(c);
  auto symbols = p.stack_symbols;
  for (const char* s : {"#", "1"})
    if (std::find(symbols.begin(), symbols.end(), s) == symbols.end()) symbols.emplace_back(s);

  ProgramBuilder b(counters, symbols);
  std::vector<int> at(p.code.size());
  for (auto& l : at) l = b.label();
  const int underflow = b.label();
  b.push("#");
  for (std::size_t i = 0; i < p.code.size(); ++i) {
    b.bind(at[i]);
    const Instr& in = p.code[i];
    const bool mine = (in.op == Op::inc || in.op == Op::dec || in.op == Op::jump_zero) && in.arg == target;
    auto name = [&]() { return p.counters[in.arg]; };
    auto sym = [&]() { return p.stack_symbols[in.arg]; };
    switch (in.op) {
      case Op::inc: mine ? b.push("1") : b.inc(name()); break;
      case Op::dec:
        if (mine) {
          b.jump_top("#", underflow);
          b.pop();
        } else {
          b.dec(name());
        }
        break;
      case Op::jump_zero: mine ? b.jump_top("#", at[in.target]) : b.jump_zero(name(), at[in.target]); break;
      case Op::jump: b.jump(at[in.target]); break;
      case Op::left: b.left(); break;
      case Op::right: b.right(); break;
      case Op::jump_symbol: b.jump_symbol(in.symbol, at[in.target]); break;
      case Op::choice: b.choice(at[in.target]); break;
      case Op::push: b.push(sym()); break;
      case Op::pop: b.pop(); break;
      case Op::jump_top: b.jump_top(sym(), at[in.target]); break;
      case Op::exit: {
        // Drop what is left of the counter, then the separator.
        const int drain = b.label(), done = b.label();
        b.bind(drain);
        b.jump_top("#", done);
        b.pop();
        b.jump(drain);
        b.bind(done);
        b.pop();
        b.exit(in.arg);
        break;
      }
    }
  }
  b.bind(underflow);
  b.exit(-1);
  return b.finish();
}

// ---- lowering ---------------------------------------------------------------

int lower_program(MachineBuilder& b, const CounterProgram& p, const LoweringBinding& binding,
                  const std::string& prefix, const std::vector<int>& exits) {
  if (p.code.empty()) throw ProgramError("cannot lower an empty program");
  const auto& st = b.spec().stack;
  auto resolve = [&](std::size_t i) -> int {
    std::set<std::size_t> seen;
    while (p.code[i].op == Op::jump) {
      if (!seen.insert(i).second) throw ProgramError("jump cycle without effect");
      i = static_cast<std::size_t>(p.code[i].target);
    }
    if (p.code[i].op == Op::exit) {
      const int code = p.code[i].arg;
      if (code < 0 && binding.error_state >= 0) return binding.error_state;
      if (code < 0 || code >= static_cast<int>(exits.size())) throw ProgramError("exit code without continuation");
      return exits[static_cast<std::size_t>(code)];
    }
    return b.state(prefix + "." + std::to_string(i));
  };
  auto stack_sym = [&](int program_sym) {
    auto it = binding.stack_symbols.find(p.stack_symbols.at(static_cast<std::size_t>(program_sym)));
    if (it == binding.stack_symbols.end()) throw ProgramError("unbound stack symbol");
    return it->second;
  };
  const int stack_size = st ? static_cast<int>(st->alphabet.size()) : 0;

  for (std::size_t i = 0; i < p.code.size(); ++i) {
    const Instr& in = p.code[i];
    if (in.op == Op::jump || in.op == Op::exit) continue;
    const int self = b.state(prefix + "." + std::to_string(i));
    const int next = resolve(i + 1);
    const int jump_to = in.target >= 0 ? resolve(static_cast<std::size_t>(in.target)) : -1;
    const std::string* cname = (in.op == Op::inc || in.op == Op::dec || in.op == Op::jump_zero)
                                   ? &p.counters.at(static_cast<std::size_t>(in.arg))
                                   : nullptr;
    int machine_counter = -1;
    std::pair<int, int> on_stack{-1, -1};
    if (cname) {
      if (auto it = binding.counters.find(*cname); it != binding.counters.end()) machine_counter = it->second;
      else if (auto s = binding.stack_counters.find(*cname); s != binding.stack_counters.end()) on_stack = s->second;
      else throw ProgramError("unbound counter '" + *cname + "'");
    }
    for (char t : b.tape_symbols()) {
      auto r = b.rule(self, t, next, 0);
      switch (in.op) {
        case Op::inc:
          if (machine_counter >= 0) r.ops[machine_counter] = CounterOp::inc;
          else r.stack_op = StackOp::push({on_stack.first});
          b.add(std::move(r));
          break;
        case Op::dec:
          if (machine_counter >= 0) {
            r.guards[machine_counter] = Guard::nonzero;
            r.ops[machine_counter] = CounterOp::dec;
          } else {
            r.stack_top = on_stack.first;
            r.stack_op = StackOp::pop();
          }
          b.add(std::move(r));
          break;
        case Op::jump_zero: {
          auto z = r;
          z.to = jump_to;
          if (machine_counter >= 0) {
            z.guards[machine_counter] = Guard::zero;
            r.guards[machine_counter] = Guard::nonzero;
          } else {
            z.stack_top = on_stack.second;
            r.stack_top = on_stack.first;
          }
          b.add(std::move(z));
          b.add(std::move(r));
          break;
        }
        case Op::left:
          if (t == kLeftEnd) break;
          r.move = -1;
          b.add(std::move(r));
          break;
        case Op::right:
          if (t == kRightEnd) break;
          r.move = 1;
          b.add(std::move(r));
          break;
        case Op::jump_symbol:
          if (t == in.symbol) r.to = jump_to;
          b.add(std::move(r));
          break;
        case Op::choice: {
          auto other = r;
          other.to = jump_to;
          b.add(std::move(other));
          b.add(std::move(r));
          break;
        }
        case Op::push:
          r.stack_op = StackOp::push({stack_sym(in.arg)});
          b.add(std::move(r));
          break;
        case Op::pop:
          for (int s = 1; s < stack_size; ++s) {
            auto q = r;
            q.stack_top = s;
            q.stack_op = StackOp::pop();
            b.add(std::move(q));
          }
          break;
        case Op::jump_top: {
          const int want = stack_sym(in.arg);
          for (int s = 0; s < stack_size; ++s) {
            auto q = r;
            q.stack_top = s;
            if (s == want) q.to = jump_to;
            b.add(std::move(q));
          }
          break;
        }
        default: break;
      }
    }
  }
  return resolve(0);
}

}  // namespace counterlab

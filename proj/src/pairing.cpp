#include <map>
#include <stdexcept>

#include "counterlab/builder.hpp"
#include "counterlab/counterprog.hpp"
#include "counterlab/executor.hpp"
#include "counterlab/transforms.hpp"

namespace counterlab {

namespace {

std::string fresh(const MachineBuilder& b, std::string base) {
  while (b.has_state(base)) base += "'";
  return base;
}

bool compatible(Guard g, bool zero) {
  return g == Guard::any || (g == Guard::zero) == zero;
}

}  // namespace

int fusion_rounds(int k) {
  int rounds = 0;
  for (int c = k; c > 1; c = (c + 1) / 2) ++rounds;
  return rounds;
}

MachineSpec pair_counters(const MachineSpec& m, int a, int b, const PairingOptions& opt) {
  const int k = m.counters;
  if (k < 2) throw std::invalid_argument("pair_counters needs at least two counters");
  if (a == b || a < 0 || b < 0 || a >= k || b >= k) throw std::invalid_argument("invalid counter pair");
  const std::uint64_t p = opt.p ? opt.p : default_step_cap(m, opt.max_len) + 1;
  if (p < 2) throw std::invalid_argument("pairing base must be at least 2");

  std::vector<int> keep(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (int j = 0; j < k; ++j)
    if (j != a && j != b) keep[j] = next++;
  const int ct3 = next, ct1 = next + 1, ct2 = next + 2, ct4 = next + 3;

  MachineSpec shape = m;
  shape.name = m.name + "~pair";
  shape.counters = k + 2;
  MachineBuilder bld(shape);
  for (const auto& s : m.states) bld.state(s);
  const int sink = bld.state(fresh(bld, "pair~overflow"));

  LoweringBinding bind;
  bind.counters = {{"CT1", ct1}, {"CT2", ct2}, {"CT3", ct3}, {"CT4", ct4}};
  bind.error_state = sink;

  // CT2 := p before the first simulated move.
  ProgramBuilder init(pairing_counters());
  emit_constant(init, p, "CT2", "CT1");
  init.exit(0);
  const int entry = lower_program(bld, init.finish(), bind, fresh(bld, "pair~init"), {m.initial});

  const auto zero_test = zero_test_program();
  std::map<std::size_t, int> continuation;  // rule index -> first state after the move

  auto continuation_of = [&](std::size_t i) {
    if (auto it = continuation.find(i); it != continuation.end()) return it->second;
    const auto& r = m.transitions[i];
    const std::string tag = "pair~r" + std::to_string(i);
    int cont = r.to;
    if (r.ops[b] == CounterOp::inc) {
      // The low component wrapped to zero: the encoding is broken.
      cont = lower_program(bld, zero_test, bind, tag + "~ovf", {cont, sink, cont, sink});
    }
    if (r.ops[b] != CounterOp::noop) cont = lower_program(bld, update_program(2, r.ops[b]), bind, tag + "~b", {cont, sink});
    if (r.ops[a] != CounterOp::noop) cont = lower_program(bld, update_program(1, r.ops[a]), bind, tag + "~a", {cont, sink});
    continuation[i] = cont;
    return cont;
  };

  for (int q = 0; q < static_cast<int>(m.states.size()); ++q) {
    if (m.is_halting(q)) continue;
    std::vector<std::size_t> rules;
    for (std::size_t i = 0; i < m.transitions.size(); ++i)
      if (m.transitions[i].from == q) rules.push_back(i);
    if (rules.empty()) continue;

    std::vector<int> branch;
    for (int code = 0; code < 4; ++code) branch.push_back(bld.state(fresh(bld, m.states[q] + "~z" + std::to_string(code))));
    const int test = lower_program(bld, zero_test, bind, m.states[q] + "~zt", branch);
    for (char t : bld.tape_symbols()) bld.add(bld.rule(q, t, test, 0));

    for (int code = 0; code < 4; ++code) {
      const bool za = code & 2, zb = code & 1;
      for (std::size_t i : rules) {
        const auto& r = m.transitions[i];
        if (!compatible(r.guards[a], za) || !compatible(r.guards[b], zb)) continue;
        TransitionRule x = bld.rule(branch[code], r.read, continuation_of(i), r.move);
        for (int j = 0; j < k; ++j) {
          if (keep[j] < 0) continue;
          x.guards[keep[j]] = r.guards[j];
          x.ops[keep[j]] = r.ops[j];
        }
        x.stack_top = r.stack_top;
        x.stack_op = r.stack_op;
        bld.add(std::move(x));
      }
    }
  }

  bld.spec().provenance = Provenance{m.name, "pair", {{"pair", {a, b}}, {"p", p}}};
  auto acc = m.accepting;
  auto rej = m.rejecting;
  rej.push_back(sink);
  return bld.finish(entry, acc, rej);
}

MachineSpec eliminate_counters(const MachineSpec& m, std::uint64_t r) {
  const int k = m.counters;
  std::uint64_t combos = 1;
  for (int j = 0; j < k; ++j) {
    if (combos > 50'000'000 / (r + 1)) throw std::invalid_argument("product state space too large");
    combos *= r + 1;
  }
  MachineSpec shape = m;
  shape.name = m.name + "~elim";
  shape.counters = 0;
  if (!m.stack)
    for (const auto& rule : m.transitions) shape.allow_stationary = shape.allow_stationary || rule.move == 0;
  MachineBuilder bld(shape);

  auto decode = [&](std::uint64_t idx) {
    std::vector<std::uint64_t> v(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      v[j] = idx % (r + 1);
      idx /= r + 1;
    }
    return v;
  };
  auto encode = [&](const std::vector<std::uint64_t>& v) {
    std::uint64_t idx = 0;
    for (int j = k - 1; j >= 0; --j) idx = idx * (r + 1) + v[j];
    return idx;
  };
  auto name = [&](int q, const std::vector<std::uint64_t>& v) {
    std::string s = m.states[q];
    if (k == 0) return s;
    s += "[";
    for (int j = 0; j < k; ++j) s += (j ? "," : "") + std::to_string(v[j]);
    return s + "]";
  };
  const auto nq = static_cast<int>(m.states.size());
  // State (q, v) gets index q * combos + encode(v).
  for (int q = 0; q < nq; ++q)
    for (std::uint64_t c = 0; c < combos; ++c) bld.state(name(q, decode(c)));
  auto id = [&](int q, std::uint64_t c) { return static_cast<int>(static_cast<std::uint64_t>(q) * combos + c); };

  int sink = -1;
  std::vector<int> acc, rej;
  for (const auto& rule : m.transitions) {
    for (std::uint64_t c = 0; c < combos; ++c) {
      auto v = decode(c);
      bool fires = true;
      for (int j = 0; j < k && fires; ++j) fires = compatible(rule.guards[j], v[j] == 0);
      if (!fires) continue;
      bool overflow = false;
      for (int j = 0; j < k; ++j) {
        if (rule.ops[j] == CounterOp::inc) overflow = overflow || ++v[j] > r;
        if (rule.ops[j] == CounterOp::dec) --v[j];
      }
      int to;
      if (overflow) {
        // Any rejecting state halts the run; a sink is only needed without one.
        if (!m.rejecting.empty()) to = id(m.rejecting.front(), 0);
        else {
          if (sink < 0) sink = bld.state("elim~overflow");
          to = sink;
        }
      } else {
        to = id(rule.to, encode(v));
      }
      TransitionRule x = bld.rule(id(rule.from, c), rule.read, to, rule.move);
      x.stack_top = rule.stack_top;
      x.stack_op = rule.stack_op;
      bld.add(std::move(x));
    }
  }
  for (int q = 0; q < nq; ++q) {
    for (std::uint64_t c = 0; c < combos; ++c) {
      if (m.is_accepting(q)) acc.push_back(id(q, c));
      if (m.is_rejecting(q)) rej.push_back(id(q, c));
    }
  }
  if (sink >= 0) rej.push_back(sink);
  bld.spec().provenance = Provenance{m.name, "eliminate", {{"ceiling", r}}};
  return bld.finish(id(m.initial, 0), acc, rej);
}

}  // namespace counterlab

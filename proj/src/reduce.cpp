#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "counterlab/builder.hpp"
#include "counterlab/counterprog.hpp"
#include "counterlab/executor.hpp"
#include "counterlab/transforms.hpp"

namespace counterlab {

namespace {

bool compatible(Guard g, bool zero) {
  return g == Guard::any || (g == Guard::zero) == zero;
}

// Exit 1 iff digit j of CT3 (base p, k digits, the top digit unbounded) is zero.
CounterProgram digit_test_program(std::uint64_t p, int k, int j) {
  ProgramBuilder b(pairing_counters());
  const int compare = b.label();
  if (j + 1 < k) {
    // CT1 := CT3 mod p^(j+1), CT3 preserved through CT4.
    emit_power(b, p, j + 1, "CT2", "CT1");
    const int loop = b.label(), refill = b.label(), out = b.label(), full = b.label();
    b.bind(loop);
    b.jump_zero("CT3", out);
    b.jump_zero("CT2", refill);
    b.dec("CT3");
    b.inc("CT4");
    b.dec("CT2");
    b.inc("CT1");
    b.jump(loop);
    b.bind(refill);
    b.transfer("CT1", "CT2");
    b.jump(loop);
    b.bind(out);
    b.transfer("CT4", "CT3");
    b.jump_zero("CT2", full);
    b.clear("CT2");
    b.jump(compare);
    b.bind(full);
    b.clear("CT1");
  } else {
    const int loop = b.label(), out = b.label();
    b.bind(loop);
    b.jump_zero("CT3", out);
    b.dec("CT3");
    b.inc("CT1");
    b.inc("CT4");
    b.jump(loop);
    b.bind(out);
    b.transfer("CT4", "CT3");
  }
  b.bind(compare);
  // The digit is zero iff CT1 < p^j.
  emit_power(b, p, j, "CT2", "CT4");
  const int cmp = b.label(), ran_out = b.label(), bigger = b.label(), equal = b.label();
  b.bind(cmp);
  b.jump_zero("CT1", ran_out);
  b.jump_zero("CT2", bigger);
  b.dec("CT1");
  b.dec("CT2");
  b.jump(cmp);
  b.bind(ran_out);
  b.jump_zero("CT2", equal);
  b.clear("CT2");
  b.exit(1);
  b.bind(equal);
  b.exit(0);
  b.bind(bigger);
  b.clear("CT1");
  b.exit(0);
  return b.finish();
}

// CT3 += p^j or CT3 -= p^j; exit 1 when CT3 runs out.
CounterProgram digit_update_program(std::uint64_t p, int j, CounterOp op) {
  ProgramBuilder b(pairing_counters());
  emit_power(b, p, j, "CT2", "CT1");
  const int loop = b.label(), done = b.label(), err = b.label();
  b.bind(loop);
  b.jump_zero("CT2", done);
  if (op == CounterOp::dec) b.jump_zero("CT3", err);
  b.dec("CT2");
  if (op == CounterOp::inc) b.inc("CT3");
  else b.dec("CT3");
  b.jump(loop);
  b.bind(done);
  b.exit(0);
  b.bind(err);
  b.clear("CT2");
  b.exit(1);
  return b.finish();
}

std::string fresh_symbol(const StackSpec& st, std::initializer_list<const char*> candidates) {
  for (const char* c : candidates)
    if (std::find(st.alphabet.begin(), st.alphabet.end(), c) == st.alphabet.end()) return c;
  throw std::logic_error("no fresh stack symbol available");
}

MachineSpec encode_all(const MachineSpec& m, const PairingOptions& opt, bool pd, ReductionReport* report) {
  const int k = m.counters;
  const std::uint64_t p = opt.p ? opt.p : default_step_cap(m, opt.max_len) + 1;
  if (p < 2) throw std::invalid_argument("encoding base must be at least 2");

  MachineSpec shape = m;
  shape.name = m.name + (pd ? "~reduce3pd" : "~reduce4");
  shape.counters = pd ? 3 : 4;
  LoweringBinding bind;
  bind.counters = {{"CT3", 0}, {"CT1", 1}, {"CT2", 2}};
  if (pd) {
    const auto sep = fresh_symbol(*shape.stack, {"#", "\xC2\xA7", "|"});
    shape.stack->alphabet.push_back(sep);
    const auto unit = fresh_symbol(*shape.stack, {"1", "\xC2\xB7", "!"});
    shape.stack->alphabet.push_back(unit);
    const int n = static_cast<int>(shape.stack->alphabet.size());
    bind.stack_symbols = {{"#", n - 2}, {"1", n - 1}};
  } else {
    bind.counters["CT4"] = 3;
  }
  auto prepare = [&](CounterProgram prog) { return pd ? stack_as_counter(prog, "CT4") : prog; };

  MachineBuilder bld(shape);
  for (const auto& s : m.states) bld.state(s);
  auto fresh = [&](std::string base) {
    while (bld.has_state(base)) base += "'";
    return base;
  };
  const int sink = bld.state(fresh("reduce~overflow"));
  bind.error_state = sink;

  std::vector<CounterProgram> tests, incs, decs;
  for (int j = 0; j < k; ++j) {
    tests.push_back(prepare(digit_test_program(p, k, j)));
    incs.push_back(prepare(digit_update_program(p, j, CounterOp::inc)));
    decs.push_back(prepare(digit_update_program(p, j, CounterOp::dec)));
  }

  std::map<std::size_t, int> continuation;
  auto continuation_of = [&](std::size_t i) {
    if (auto it = continuation.find(i); it != continuation.end()) return it->second;
    const auto& r = m.transitions[i];
    int cont = r.to;
    for (int j = k - 1; j >= 0; --j) {
      const std::string tag = "reduce~r" + std::to_string(i) + "~c" + std::to_string(j);
      if (r.ops[j] == CounterOp::inc && j + 1 < k) cont = lower_program(bld, tests[j], bind, tag + "~ovf", {cont, sink});
      if (r.ops[j] == CounterOp::inc) cont = lower_program(bld, incs[j], bind, tag + "~inc", {cont, sink});
      if (r.ops[j] == CounterOp::dec) cont = lower_program(bld, decs[j], bind, tag + "~dec", {cont, sink});
    }
    continuation[i] = cont;
    return cont;
  };

  for (int q = 0; q < static_cast<int>(m.states.size()); ++q) {
    if (m.is_halting(q)) continue;
    std::vector<std::size_t> rules;
    std::vector<int> tested;
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
      if (m.transitions[i].from != q) continue;
      rules.push_back(i);
      for (int j = 0; j < k; ++j)
        if (m.transitions[i].guards[j] != Guard::any) tested.push_back(j);
    }
    if (rules.empty()) continue;
    std::sort(tested.begin(), tested.end());
    tested.erase(std::unique(tested.begin(), tested.end()), tested.end());

    // Decision tree over the tested digits; leaves carry the original rules.
    std::vector<bool> zero(static_cast<std::size_t>(k), false);
    std::function<int(std::size_t, const std::string&)> node = [&](std::size_t d, const std::string& bits) -> int {
      if (d == tested.size()) {
        const int leaf = bld.state(fresh(m.states[q] + "~leaf" + bits));
        for (std::size_t i : rules) {
          const auto& r = m.transitions[i];
          bool ok = true;
          for (int j : tested) ok = ok && compatible(r.guards[j], zero[j]);
          if (!ok) continue;
          TransitionRule x = bld.rule(leaf, r.read, continuation_of(i), r.move);
          x.stack_top = r.stack_top;
          x.stack_op = r.stack_op;
          bld.add(std::move(x));
        }
        return leaf;
      }
      const int j = tested[d];
      zero[j] = false;
      const int nonzero_branch = node(d + 1, bits + "n");
      zero[j] = true;
      const int zero_branch = node(d + 1, bits + "z");
      return lower_program(bld, tests[j], bind, m.states[q] + "~t" + bits, {nonzero_branch, zero_branch});
    };
    const int root = node(0, "");
    for (char t : bld.tape_symbols()) bld.add(bld.rule(q, t, root, 0));
  }

  bld.spec().provenance =
      Provenance{m.name, pd ? "reduce3pd" : "reduce4", {{"p", p}, {"encoded_counters", k}}};
  if (report) {
    report->rounds = fusion_rounds(k);
    report->scratch = pd ? std::vector<std::string>{"CT1", "CT2", "stack"} : std::vector<std::string>{"CT1", "CT2", "CT4"};
    report->p = p;
  }
  auto rej = m.rejecting;
  rej.push_back(sink);
  return bld.finish(m.initial, m.accepting, rej);
}

}  // namespace

MachineSpec reduce_counters(const MachineSpec& m, const PairingOptions& opt, ReductionReport* report) {
  if (m.counters < 4) throw std::invalid_argument("reduce_counters needs at least four counters");
  if (m.counters == 4) {
    MachineSpec out = m;
    out.provenance = Provenance{m.name, "reduce4", {{"identity", true}}};
    if (report) *report = ReductionReport{};
    return out;
  }
  return encode_all(m, opt, false, report);
}

MachineSpec reduce_counters_pd(const MachineSpec& m, const PairingOptions& opt, ReductionReport* report) {
  if (!m.stack) throw std::invalid_argument("reduce_counters_pd needs a pushdown machine");
  if (m.counters < 3) throw std::invalid_argument("reduce_counters_pd needs at least three counters");
  if (m.counters == 3) {
    MachineSpec out = m;
    out.provenance = Provenance{m.name, "reduce3pd", {{"identity", true}}};
    if (report) *report = ReductionReport{};
    return out;
  }
  return encode_all(m, opt, true, report);
}

}  // namespace counterlab

#include "support.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_set>

#include "counterlab/builder.hpp"
#include "counterlab/families.hpp"
#include "counterlab/oracle.hpp"

namespace testsupport {

using namespace counterlab;

MachineSpec random_machine(Rng& rng, const RandomShape& shape, const std::string& name) {
  MachineSpec s;
  s.name = name;
  s.mode = shape.deterministic ? Mode::deterministic : Mode::nondeterministic;
  s.alphabet = shape.alphabet;
  s.counters = shape.counters;
  if (shape.stack) {
    StackSpec st;
    st.alphabet.emplace_back(kBottom);
    for (int i = 0; i < shape.stack_symbols; ++i) st.alphabet.push_back(std::string(1, static_cast<char>('A' + i)));
    st.push_size = shape.push_size;
    s.stack = st;
  }
  MachineBuilder b(s);
  std::vector<int> q;
  for (int i = 0; i < shape.states; ++i) q.push_back(b.state("q" + std::to_string(i)));
  const int acc = b.state("acc"), rej = b.state("rej");
  const int total = shape.states + 2;

  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };
  const bool may_stay = shape.counters > 0 || shape.stack;

  for (int from : q) {
    for (char t : b.tape_symbols()) {
      const int n = shape.deterministic ? uniform(0, 1) : uniform(0, shape.max_rules);
      for (int i = 0; i < n; ++i) {
        std::vector<int> moves;
        if (t != kLeftEnd) moves.push_back(-1);
        if (may_stay) moves.push_back(0);
        if (t != kRightEnd) moves.push_back(1);
        const int move = moves[uniform(0, static_cast<int>(moves.size()) - 1)];
        int to = uniform(0, total - 1);
        if (shape.halt >= 0) to = chance(shape.halt) ? (chance(0.5) ? acc : rej) : q[uniform(0, shape.states - 1)];
        auto r = b.rule(from, t, to, move);
        for (int j = 0; j < shape.counters; ++j) {
          if (!shape.deterministic) r.guards[j] = static_cast<Guard>(uniform(0, 2));
          if (chance(shape.inc)) r.ops[j] = CounterOp::inc;
          else if (chance(shape.dec)) {
            r.ops[j] = CounterOp::dec;
            r.guards[j] = Guard::nonzero;
          }
        }
        if (shape.stack && !shape.deterministic) {
          const int kind = uniform(0, 2);
          if (kind == 1) {
            r.stack_top = uniform(1, shape.stack_symbols);
            r.stack_op = StackOp::pop();
          } else if (kind == 2) {
            std::vector<int> w(static_cast<std::size_t>(uniform(1, shape.push_size)));
            for (auto& x : w) x = uniform(1, shape.stack_symbols);
            r.stack_op = StackOp::push(w);
            if (chance(0.3)) r.stack_top = uniform(0, shape.stack_symbols);
          }
        }
        if (shape.deterministic) {
          // One rule per trigger keeps the table conflict free.
          for (auto& g : r.guards) g = Guard::any;
          for (int j = 0; j < shape.counters; ++j)
            if (r.ops[j] == CounterOp::dec) r.ops[j] = CounterOp::noop;
        }
        b.add(std::move(r));
      }
    }
  }
  return b.finish(q[0], {acc}, {rej});
}

GraphStats explore(const MachineSpec& m, std::string_view x, std::size_t config_cap) {
  GraphStats g;
  Stepper st(m, x);
  std::unordered_set<Configuration, ConfigurationHash> seen;
  std::deque<Configuration> work;
  auto visit = [&](const Configuration& c) {
    if (!seen.insert(c).second) return;
    for (auto v : c.counters) g.max_counter = std::max(g.max_counter, v);
    g.max_stack = std::max(g.max_stack, c.stack.size());
    work.push_back(c);
  };
  visit(initial_configuration(m));
  std::vector<Configuration> succ;
  while (!work.empty()) {
    if (seen.size() > config_cap) {
      g.configs = seen.size();
      return g;
    }
    auto c = std::move(work.front());
    work.pop_front();
    st.successors(c, succ);
    for (const auto& s : succ) visit(s);
  }
  g.finite = true;
  g.configs = seen.size();
  return g;
}

std::vector<std::string> all_inputs(const MachineSpec& m, std::size_t max_len) {
  return strings_up_to(m.alphabet, max_len);
}

bool tame(const MachineSpec& m, std::size_t max_len, std::size_t config_cap, std::uint32_t* max_counter) {
  std::uint32_t top = 0;
  for (const auto& x : all_inputs(m, max_len)) {
    auto g = explore(m, x, config_cap);
    if (!g.finite) return false;
    top = std::max(top, g.max_counter);
  }
  if (max_counter) *max_counter = top;
  return true;
}

MachineSpec sample_tame(Rng& rng, const RandomShape& shape, std::size_t max_len, std::size_t config_cap,
                        const std::string& name, std::uint32_t* max_counter) {
  for (int tries = 0; tries < 100000; ++tries) {
    auto m = random_machine(rng, shape, name);
    if (tame(m, max_len, config_cap, max_counter)) return m;
  }
  throw std::runtime_error("no tame machine found");
}

Coherence& coherence() {
  static Coherence c;
  return c;
}

Outcome coherent_decide(const MachineSpec& m, std::string_view x, std::uint64_t cap) {
  RunBudget budget;
  budget.step_cap = cap;
  const auto e = decide(m, x, budget).outcome;
  const auto o = brute_force_decide(m, x, cap).outcome;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& c = coherence();
  ++c.checked;
  if (e != Outcome::unknown && o != Outcome::unknown) {
    ++c.both_definite;
    if (e != o)
      c.contradictions.push_back(m.name + " on \"" + std::string(x) + "\": executor " + to_string(e) + ", oracle " +
                                 to_string(o));
  }
  return e != Outcome::unknown ? e : o;
}

}  // namespace testsupport

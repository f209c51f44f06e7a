#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "counterlab/counterprog.hpp"
#include "counterlab/families.hpp"
#include "counterlab/machine.hpp"
#include "criteria.hpp"
#include "support.hpp"

using namespace counterlab;

namespace acceptance {

namespace {

std::uint64_t power(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

Result pairing_round_trip() {
  std::size_t checked = 0, bad = 0;
  for (std::uint64_t p = 1; p <= 50; ++p)
    for (std::uint64_t i1 = 0; i1 < p; ++i1)
      for (std::uint64_t i2 = 0; i2 < p; ++i2) {
        const auto v = pair_encode(i1, i2, p);
        const auto [a, b] = pair_decode(v, p);
        bad += v != i1 * p + i2 || a != i1 || b != i2;
        ++checked;
      }
  return {bad == 0, std::to_string(checked) + " pairs, " + std::to_string(bad) + " failures"};
}

Result procedures() {
  std::size_t produce = 0, bad = 0;
  for (std::uint64_t n = 0; n <= 4; ++n)
    for (std::size_t len = 0; len <= 4; ++len)
      for (int t = 1; t <= 3; ++t)
        for (int head = 0; head <= static_cast<int>(len) + 1; ++head) {
          const auto r = proc_produce_p(n, std::string(len, 'a'), t, head);
          const auto want = power(n * len, t);
          const std::vector<std::string> live = want ? std::vector<std::string>{"CT2"} : std::vector<std::string>{};
          bad += r.env.counters[1] != want || r.audit.nonempty_at_exit != live || r.env.head != head;
          ++produce;
        }

  CounterProgram shape;
  shape.counters = pairing_counters();
  const std::uint64_t p = 20;
  auto env_for = [&](std::uint64_t i1, std::uint64_t i2) {
    auto e = CounterEnv::for_input(shape, "");
    e.set(shape, "CT2", p);
    e.set(shape, "CT3", i1 * p + i2);
    return e;
  };
  auto scratch_clean = [&](const CounterEnv& e) {
    return e.get(shape, "CT1") == 0 && e.get(shape, "CT4") == 0 && e.get(shape, "CT2") == p;
  };
  std::size_t calls = 0;
  for (std::uint64_t i1 = 0; i1 < p; ++i1)
    for (std::uint64_t i2 = 0; i2 < p; ++i2) {
      auto e = env_for(i1, i2);
      const auto z = proc_zero_test(e);
      bad += z.first_zero != (i1 == 0) || z.second_zero != (i2 == 0) || !scratch_clean(e) ||
             e.get(shape, "CT3") != i1 * p + i2;
      ++calls;
      for (int j = 1; j <= 2; ++j)
        for (auto op : {CounterOp::inc, CounterOp::dec}) {
          const std::uint64_t cur = j == 1 ? i1 : i2;
          const bool legal = op == CounterOp::inc ? cur + 1 < p : cur > 0;
          auto u = env_for(i1, i2);
          ++calls;
          try {
            proc_update(u, j, op);
            std::uint64_t a = i1, b = i2;
            std::uint64_t& c = j == 1 ? a : b;
            c = op == CounterOp::inc ? c + 1 : c - 1;
            bad += !legal || u.get(shape, "CT3") != a * p + b || !scratch_clean(u);
          } catch (const ProgramError&) {
            bad += legal;
          }
        }
    }
  return {bad == 0, std::to_string(produce) + " produce_p runs, " + std::to_string(calls) +
                        " zero_test/update calls at p=20, " + std::to_string(bad) + " failures"};
}

Result equality_solver() {
  const auto fam = leq_family([](std::uint64_t n) { return n; });
  std::size_t strings = 0, wrong = 0, nondet = 0, bad_count = 0;
  for (std::uint64_t n = 0; n <= 3; ++n) {
    const auto m = build_leq_2dcta(n);
    const auto words = fam.sampler(n, 2 * n + 1);
    bad_count += words.size() != power(3, static_cast<int>(2 * n + 1));
    std::size_t positives = 0;
    for (const auto& w : words) {
      ++strings;
      const bool pos = fam.positive(n, w);
      positives += pos;
      wrong += !fam.promised(n, w) ||
               testsupport::coherent_decide(m, w, 100000) != (pos ? Outcome::accept : Outcome::reject);
      // Determinism at every reachable configuration.
      Stepper st(m, w);
      std::set<Configuration> seen{initial_configuration(m)};
      std::vector<Configuration> todo(seen.begin(), seen.end());
      while (!todo.empty()) {
        const auto c = todo.back();
        todo.pop_back();
        auto next = st.successors(c);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        nondet += next.size() > 1;
        for (auto& d : next)
          if (seen.insert(d).second) todo.push_back(d);
      }
    }
    bad_count += positives != (std::size_t{1} << n);
  }
  return {wrong + nondet + bad_count == 0,
          std::to_string(strings) + " strings for n<=3, " + std::to_string(wrong) + " misclassified, " +
              std::to_string(nondet) + " branching configurations, " + std::to_string(bad_count) + " count mismatches"};
}

Result stack_state_complexity_count() {
  std::vector<MachineSpec> machines;
  for (const char* f : {"wide_push.json", "zeros_ones.json", "zeros_ones_slim.json"})
    machines.push_back(load_machine(std::string(COUNTERLAB_FIXTURES) + "/" + f));
  testsupport::Rng rng(91);
  for (int push = 1; push <= 3; ++push) {
    testsupport::RandomShape shape;
    shape.stack = true;
    shape.push_size = push;
    shape.stack_symbols = push;
    machines.push_back(testsupport::random_machine(rng, shape, "ssc" + std::to_string(push)));
  }
  std::size_t bad = 0;
  std::string sizes;
  for (const auto& m : machines) {
    // Enumerate Γ^{<=e} outright.
    const auto& gamma = m.stack->alphabet;
    std::set<std::vector<std::size_t>> words{{}};
    std::vector<std::vector<std::size_t>> frontier{{}};
    for (int len = 1; len <= m.stack->push_size; ++len) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& w : frontier)
        for (std::size_t g = 0; g < gamma.size(); ++g) {
          auto v = w;
          v.push_back(g);
          words.insert(v);
          next.push_back(std::move(v));
        }
      frontier = std::move(next);
    }
    const auto want = m.states.size() * words.size();
    const auto got = stack_state_complexity(m);
    bad += got != want;
    sizes += (sizes.empty() ? "" : ",") + std::to_string(got);
  }
  return {bad == 0, std::to_string(machines.size()) + " machines (ssc " + sizes + "), " + std::to_string(bad) +
                        " mismatches"};
}

Result coherence() {
  const auto& c = testsupport::coherence();
  std::string detail = std::to_string(c.checked) + " verdict pairs, " + std::to_string(c.both_definite) +
                       " both definite, " + std::to_string(c.contradictions.size()) + " contradictions";
  if (!c.contradictions.empty()) detail += "; first: " + c.contradictions.front();
  return {c.contradictions.empty() && c.both_definite > 0, detail};
}

}  // namespace acceptance

#include "counterlab/executor.hpp"
#include "counterlab/families.hpp"
#include "counterlab/oracle.hpp"
#include "counterlab/transforms.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace counterlab;
using testsupport::coherent_decide;

namespace {

// Verdicts of both machines agree on every input up to max_len.
void check_agree(const MachineSpec& a, const MachineSpec& b, std::size_t max_len, std::uint64_t cap_a,
                 std::uint64_t cap_b) {
  for (const auto& x : testsupport::all_inputs(a, max_len)) {
    const auto va = coherent_decide(a, x, cap_a);
    const auto vb = coherent_decide(b, x, cap_b);
    INFO(a.name << " on \"" << x << "\"");
    REQUIRE(va != Outcome::unknown);
    CHECK(va == vb);
  }
}

}  // namespace

TEST_CASE("pair_counters on random two-counter machines") {
  testsupport::Rng rng(101);
  testsupport::RandomShape shape;
  shape.counters = 2;
  for (int i = 0; i < 5; ++i) {
    std::uint32_t top = 0;
    auto m = testsupport::sample_tame(rng, shape, 3, 400, "rand2_" + std::to_string(i), &top);
    PairingOptions opt;
    opt.p = top + 2;
    auto f = pair_counters(m, 0, 1, opt);
    CHECK(f.counters == 2 - 2 + 1 + 3);
    check_agree(m, f, 3, 500, 200000);
  }
}

TEST_CASE("pair_counters leaves untouched counters alone") {
  testsupport::Rng rng(5);
  testsupport::RandomShape shape;
  shape.counters = 3;
  shape.inc = 0.2;
  std::uint32_t top = 0;
  auto m = testsupport::sample_tame(rng, shape, 2, 300, "rand3", &top);
  PairingOptions opt;
  opt.p = top + 2;
  auto f = pair_counters(m, 1, 2, opt);
  CHECK(f.counters == 3 - 2 + 1 + 3);
  check_agree(m, f, 2, 500, 200000);
}

TEST_CASE("reduce_counters") {
  testsupport::Rng rng(17);
  testsupport::RandomShape shape;
  shape.counters = 4;
  auto m4 = testsupport::random_machine(rng, shape, "four");
  ReductionReport rep;
  auto same = reduce_counters(m4, {}, &rep);
  CHECK(same.counters == 4);
  CHECK(same.transitions == m4.transitions);

  shape.counters = 5;
  shape.states = 2;
  shape.inc = 0.15;
  std::uint32_t top = 0;
  auto m5 = testsupport::sample_tame(rng, shape, 2, 200, "five", &top);
  PairingOptions opt;
  opt.p = top + 2;
  auto r = reduce_counters(m5, opt, &rep);
  CHECK(r.counters == 4);
  CHECK(rep.scratch.size() == 3);
  check_agree(m5, r, 2, 500, 2'000'000);
  CHECK(fusion_rounds(6) == 3);
}

TEST_CASE("reduce_counters_pd") {
  testsupport::Rng rng(23);
  testsupport::RandomShape shape;
  shape.counters = 4;
  shape.states = 2;
  shape.stack = true;
  shape.inc = 0.15;
  std::uint32_t top = 0;
  auto m = testsupport::sample_tame(rng, shape, 2, 200, "pd4", &top);
  PairingOptions opt;
  opt.p = top + 2;
  auto r = reduce_counters_pd(m, opt);
  CHECK(r.counters == 3);
  check_agree(m, r, 2, 500, 2'000'000);

  shape.counters = 3;
  auto m3 = testsupport::random_machine(rng, shape, "pd3");
  CHECK(reduce_counters_pd(m3).transitions == m3.transitions);
}

TEST_CASE("eliminate_counters state count") {
  MachineSpec s;
  s.name = "two";
  s.alphabet = {'0'};
  s.counters = 1;
  s.states = {"a", "b"};
  s.initial = 0;
  s.rejecting = {1};
  TransitionRule r;
  r.from = 0;
  r.read = kLeftEnd;
  r.guards = {Guard::any};
  r.ops = {CounterOp::inc};
  r.to = 1;
  r.move = 1;
  s.transitions = {r};
  validate(s);
  auto e = eliminate_counters(s, 3);
  CHECK(e.counters == 0);
  CHECK(e.states.size() == 8);

  s.transitions[0].ops = {CounterOp::noop};
  auto z = eliminate_counters(s, 0);
  CHECK(z.states.size() == 2);
  CHECK(coherent_decide(z, "0", 100) == Outcome::reject);
}

TEST_CASE("eliminate_counters on the equality solver") {
  const auto m = build_leq_2dcta(2);
  const auto fam = leq_family([](std::uint64_t n) { return n; });
  std::uint64_t cap = 0;
  for (const auto& w : fam.sampler(2, 5)) {
    auto rt = runtime_max(m, w, RunBudget{100000, 2'000'000});
    REQUIRE_FALSE(rt.unknown);
    cap = std::max(cap, rt.steps);
  }
  auto e = eliminate_counters(m, cap);
  CHECK(e.states.size() <= m.states.size() * (cap + 1) + 1);
  CHECK(e.states.size() >= m.states.size() * (cap + 1));
  for (const auto& w : fam.sampler(2, 5)) {
    const bool pos = fam.positive(2, w);
    CHECK(coherent_decide(e, w, 100000) == (pos ? Outcome::accept : Outcome::reject));
  }
}

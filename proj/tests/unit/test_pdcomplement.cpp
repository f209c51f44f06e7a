#include <random>

#include "counterlab/builder.hpp"
#include "counterlab/executor.hpp"
#include "counterlab/pdcomplement.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace counterlab;

namespace {

// One state reading the left endmarker and halting in `verdict`.
MachineSpec constant_pd(bool accept, int counters = 1) {
  MachineSpec s;
  s.name = accept ? "all" : "none";
  s.alphabet = {'0', '1'};
  s.counters = counters;
  s.stack = StackSpec{{std::string(kBottom), "A"}, 1};
  s.states = {"go", "acc", "rej"};
  s.initial = 0;
  s.accepting = {1};
  s.rejecting = {2};
  TransitionRule r;
  r.from = 0;
  r.read = kLeftEnd;
  r.guards.assign(counters, Guard::any);
  r.ops.assign(counters, CounterOp::noop);
  r.to = accept ? 1 : 2;
  r.move = 1;
  s.transitions = {r};
  validate(s);
  return s;
}

std::size_t height(const Configuration& c) { return c.stack.size() - 1; }

// Returns the number of basic intervals checked along the path.
std::size_t check_path_decomposition(const MachineSpec& slim, std::string_view x, std::uint64_t t,
                                     const std::vector<Configuration>& path) {
  IntervalSolver solver(slim, x, t);
  std::size_t checked = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (height(path[i + 1]) != height(path[i]) + 1) continue;
    std::size_t j = i + 1;
    while (height(path[j]) != height(path[i])) ++j;
    const std::uint64_t h = height(path[i]);
    const ConfInterval eta{surface(path[i]), 0, surface(path[j]), j - i, h};
    std::uint64_t s1 = 0;
    std::size_t first_mid = 0;
    for (std::size_t m = i + 2; m + 1 < j; ++m)
      if (height(path[m]) == h + 1) {
        ++s1;
        if (!first_mid) first_mid = m;
      }
    const ConfInterval inner{surface(path[i + 1]), s1, surface(path[j - 1]), j - i - 2, h + 1};
    CHECK(cnd1(eta, inner, slim, x));
    CHECK(solver.derivable(eta));
    CHECK(solver.derivable(inner));
    ConfInterval wrong = inner;
    wrong.l += 1;
    CHECK_FALSE(cnd1(eta, wrong, slim, x));
    if (s1 > 0) {
      const ConfInterval a{inner.from, 0, surface(path[first_mid]), first_mid - (i + 1), h + 1};
      const ConfInterval b{surface(path[first_mid]), s1 - 1, inner.to, (j - 1) - first_mid, h + 1};
      CHECK(cnd2(inner, a, b, slim, x));
      CHECK(solver.derivable(a));
      CHECK(solver.derivable(b));
      ConfInterval b2 = b;
      b2.s = s1;
      CHECK_FALSE(cnd2(inner, a, b2, slim, x));
    }
    ++checked;
  }
  return checked;
}

}  // namespace

TEST_CASE("constant machines") {
  RunBudget b{1000, 100000};
  for (const std::string x : {"", "0", "101"}) {
    CHECK(complement_decide_pd(constant_pd(false), x, b).outcome == Outcome::accept);
    CHECK(complement_decide_pd(constant_pd(true), x, b).outcome == Outcome::reject);
  }
}

TEST_CASE("interval enumeration") {
  IntervalSpace space(1, 0, 2, 1, 2);
  CHECK(space.conf_count() == 12);
  CHECK(space.size() == 1152);
  const auto first = space.at(0);
  CHECK(first.from == space.conf_at(0));
  CHECK(first.to == space.conf_at(0));
  CHECK(first.s + first.l + first.r == 0);
  std::uint64_t expect = 0;
  ConfInterval prev;
  space.for_each([&](std::uint64_t i, const ConfInterval& eta) {
    CHECK(i == expect);
    if (i > 0) CHECK(prev < eta);
    prev = eta;
    ++expect;
    return true;
  });
  CHECK(expect == 1152);
  std::mt19937_64 rng(9);
  for (int n = 0; n < 100; ++n) {
    const auto i = rng() % space.size();
    CHECK(space.index(space.at(i)) == i);
  }
  CHECK_THROWS_AS(space.at(1152), std::out_of_range);
  const auto [a, b] = space.pair_at(3, 7);
  CHECK(a == space.at(3));
  CHECK(b == space.at(7));
}

TEST_CASE("split conditions") {
  ConfInterval eta{{0, 0, 0, {0}}, 0, {0, 0, 0, {0}}, 2, 0};
  ConfInterval eta1{{0, 0, 1, {0}}, 0, {0, 0, 1, {0}}, 1, 1};
  const auto m = constant_pd(true);
  CHECK_FALSE(cnd1(eta, eta1, m, ""));
  eta.s = 1;
  CHECK_THROWS_AS(cnd1(eta, eta1, m, ""), std::invalid_argument);
  ConfInterval a{eta.from, 0, eta1.from, 1, 0};
  ConfInterval b{eta1.from, 0, eta.to, 1, 0};
  CHECK(cnd2(eta, a, b, m, ""));
  b.l = 2;
  CHECK_FALSE(cnd2(eta, a, b, m, ""));
  eta.s = 0;
  CHECK_THROWS_AS(cnd2(eta, a, b, m, ""), std::invalid_argument);
}

TEST_CASE("random slim machines") {
  testsupport::Rng rng(61);
  testsupport::RandomShape shape;
  shape.stack = true;
  shape.states = 2;
  shape.stack_symbols = 2;
  RunBudget budget{400, 200000};
  std::size_t definite = 0, decompositions = 0;
  for (int t = 0; t < 12; ++t) {
    const auto m = testsupport::random_machine(rng, shape, "pd" + std::to_string(t));
    const auto slim = normalize_slim(m);
    for (const auto& x : testsupport::all_inputs(m, 2)) {
      const auto want = testsupport::coherent_decide(slim, x, budget.step_cap);
      const auto got = complement_pd(slim, x, budget);
      if (want == Outcome::unknown || !got.verdict.definite()) continue;
      ++definite;
      CHECK(got.verdict.outcome == (want == Outcome::accept ? Outcome::reject : Outcome::accept));
      if (want == Outcome::accept) {
        const auto v = decide(slim, x, budget);
        decompositions += check_path_decomposition(slim, x, got.t_x, v.witness);
      }
    }
  }
  CHECK(definite > 20);
  CHECK(decompositions > 0);
}

TEST_CASE("work-stack run") {
  for (bool accept : {false, true}) {
    const auto slim = normalize_slim(constant_pd(accept, 0));
    const auto rt = runtime_max(slim, "0", RunBudget{100, 10000});
    REQUIRE_FALSE(rt.unknown);
    const auto run = stage3_run(slim, "0", rt.steps, Stage3Options{2'000'000, 100});
    CHECK(run.consecutive);
    CHECK(run.outcome == (accept ? Outcome::reject : Outcome::accept));
    CHECK_FALSE(run.trace.empty());
  }
  CHECK(rounds_consecutive({0, 0, 1, 1, 2}));
  CHECK_FALSE(rounds_consecutive({0, 1, 0}));
}

#include <algorithm>
#include <string>

#include "counterlab/builder.hpp"
#include "counterlab/executor.hpp"
#include "counterlab/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace counterlab;

namespace {

std::string fixture(const std::string& name) { return std::string(COUNTERLAB_FIXTURES) + "/" + name; }

// From '>' the machine branches into a or b; both accept on the next cell.
MachineSpec two_paths() {
  MachineSpec shape;
  shape.name = "two_paths";
  shape.alphabet = {'0'};
  MachineBuilder b(shape);
  const int s = b.state("s"), a = b.state("a"), c = b.state("b"), acc = b.state("acc");
  b.add(b.rule(s, kLeftEnd, a, 1));
  b.add(b.rule(s, kLeftEnd, c, 1));
  b.add(b.rule(a, '0', acc, 1));
  b.add(b.rule(c, '0', acc, 1));
  return b.finish(s, {acc}, {});
}

// Increments forever while sweeping right and left.
MachineSpec pump() {
  MachineSpec shape;
  shape.name = "pump";
  shape.alphabet = {'0'};
  shape.counters = 1;
  MachineBuilder b(shape);
  const int s = b.state("s"), acc = b.state("acc");
  auto r = b.rule(s, kLeftEnd, s, 1);
  r.ops = {CounterOp::inc};
  b.add(r);
  r = b.rule(s, '0', s, -1);
  r.ops = {CounterOp::inc};
  b.add(r);
  return b.finish(s, {acc}, {});
}

}  // namespace

TEST_CASE("decisions on fixtures") {
  const auto pd = load_machine(fixture("zeros_ones.json"));
  CHECK(decide(pd, "0011", default_budget(pd, "0011")).outcome == Outcome::accept);
  CHECK(decide(pd, "001", default_budget(pd, "001")).outcome == Outcome::reject);
  const auto two = load_machine(fixture("two_state.json"));
  CHECK(decide(two, "0", RunBudget{}).outcome == Outcome::reject);
  CHECK(brute_force_decide(two, "0", 100).outcome == Outcome::reject);
}

TEST_CASE("witness replay") {
  const auto pd = load_machine(fixture("zeros_ones.json"));
  auto v = decide(pd, "01", default_budget(pd, "01"));
  REQUIRE(v.outcome == Outcome::accept);
  CHECK(replay_path(pd, "01", v.witness));
  CHECK(pd.is_accepting(v.witness.back().state));
  std::swap(v.witness[0], v.witness[1]);
  CHECK_FALSE(replay_path(pd, "01", v.witness));
}

TEST_CASE("exact layers and runtimes") {
  const auto two = load_machine(fixture("two_state.json"));
  CHECK(reachable_exact(two, "0", 0).configs == std::vector<Configuration>{initial_configuration(two)});
  CHECK(reachable_exact(two, "0", 1).configs.size() == 1);
  CHECK(reachable_exact(two, "0", 2).configs.empty());
  const auto rt = runtime_max(two, "0", RunBudget{});
  CHECK_FALSE(rt.unknown);
  CHECK(rt.steps == 1);
}

TEST_CASE("accepting path counts") {
  const auto m = two_paths();
  const auto c = count_accepting_paths(m, "0", RunBudget{});
  CHECK(c.count == 2);
  CHECK_FALSE(c.saturated);
  CHECK(enumerate_accepting_paths(m, "0", OracleBudget{}, 10).size() == 2);
  CHECK(count_accepting_paths(m, "00", RunBudget{}).count == 2);
  CHECK(count_accepting_paths(m, "", RunBudget{}).count == 0);
  CHECK(count_accepting_paths(m, "0", RunBudget{}, 1).saturated);
}

TEST_CASE("unbounded runs stay unknown") {
  const auto m = pump();
  CHECK(decide(m, "0", RunBudget{50, 10000}).outcome == Outcome::unknown);
  CHECK(brute_force_decide(m, "0", 50).outcome == Outcome::unknown);
  CHECK(runtime_max(m, "0", RunBudget{50, 10000}).unknown);
}

TEST_CASE("oracle successors match the step relation") {
  testsupport::Rng rng(13);
  for (bool stack : {false, true}) {
    testsupport::RandomShape shape;
    shape.counters = 2;
    shape.stack = stack;
    shape.stack_symbols = 2;
    for (int i = 0; i < 10; ++i) {
      const auto m = testsupport::random_machine(rng, shape, "succ" + std::to_string(i));
      for (const auto& c : reachable_exact(m, "01", 3).configs) {
        auto o = oracle_successors(m, "01", c);
        std::sort(o.begin(), o.end());
        o.erase(std::unique(o.begin(), o.end()), o.end());
        CHECK(o == step_relation(m, "01", c));
      }
    }
  }
}

TEST_CASE("executor and oracle agree on random machines") {
  testsupport::Rng rng(29);
  testsupport::RandomShape shape;
  shape.counters = 2;
  const auto before = testsupport::coherence().contradictions.size();
  std::size_t definite = 0;
  for (int i = 0; i < 15; ++i) {
    const auto m = testsupport::sample_tame(rng, shape, 3, 5000, "coh" + std::to_string(i));
    for (const auto& x : testsupport::all_inputs(m, 3))
      definite += testsupport::coherent_decide(m, x, 2000) != Outcome::unknown;
  }
  CHECK(definite > 0);
  CHECK(testsupport::coherence().contradictions.size() == before);
}

TEST_CASE("equivalence reports") {
  const auto m = load_machine(fixture("four_counters.json"));
  const auto inputs = testsupport::all_inputs(m, 2);
  CHECK(check_equivalence(m, m, inputs, OracleBudget{}).equivalent());
  auto swapped = m;
  std::swap(swapped.accepting, swapped.rejecting);
  const auto rep = check_equivalence(m, swapped, inputs, OracleBudget{});
  CHECK(rep.checked == inputs.size());
  CHECK_FALSE(rep.disagreements.empty());
}

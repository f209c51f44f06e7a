#include <string>

#include "counterlab/builder.hpp"
#include "counterlab/machine.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace counterlab;

namespace {

std::string fixture(const std::string& name) { return std::string(COUNTERLAB_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("document round trip") {
  for (const char* f : {"two_state.json", "four_counters.json", "zeros_ones.json", "wide_push.json",
                        "leq_2dcta.json"}) {
    const auto m = load_machine(fixture(f));
    CHECK(parse_machine(serialize_machine(m)) == m);
  }
  testsupport::Rng rng(3);
  testsupport::RandomShape shape;
  shape.stack = true;
  shape.push_size = 2;
  for (int i = 0; i < 20; ++i) {
    const auto m = testsupport::random_machine(rng, shape, "r" + std::to_string(i));
    CHECK(machine_from_json(machine_to_json(m)) == m);
  }
}

TEST_CASE("malformed documents") {
  try {
    parse_machine("{\"states\": [");
    FAIL("no error");
  } catch (const MachineError& e) {
    CHECK(e.kind() == MachineError::Kind::syntax);
    CHECK(e.byte_position().has_value());
  }
  try {
    load_machine(fixture("bad_symbol.json"));
    FAIL("no error");
  } catch (const MachineError& e) {
    CHECK(e.kind() == MachineError::Kind::semantic);
  }
  CHECK_THROWS_AS(load_machine(fixture("det_conflict.json")), MachineError);
}

TEST_CASE("one-state acceptor") {
  const auto m = parse_machine(R"({"name": "one", "mode": "deterministic", "stack": null, "states": ["q0"], "alphabet": ["0"], "counters": 0,
    "initial": "q0", "accepting": ["q0"], "rejecting": [], "transitions": []})");
  CHECK(m.states.size() == 1);
  CHECK(m.counters == 0);
  CHECK(state_complexity(m) == 1);
  CHECK_THROWS_AS(stack_state_complexity(m), std::invalid_argument);
}

TEST_CASE("stack-state complexity") {
  MachineSpec m;
  m.alphabet = {'0'};
  m.states = {"a", "b"};
  // Γ = {⊥, a}, e = 1: 2 * (1 + 2)
  m.stack = StackSpec{{std::string(kBottom), "a"}, 1};
  CHECK(stack_state_complexity(m) == 6);
  m.states.push_back("c");
  m.stack->push_size = 2;
  CHECK(stack_state_complexity(m) == 21);
  CHECK(stack_state_complexity(load_machine(fixture("wide_push.json"))) == 52);
}

TEST_CASE("step relation at the endmarkers") {
  const auto m = load_machine(fixture("two_state.json"));
  const auto start = initial_configuration(m);
  CHECK(start.head == 0);
  CHECK(start.counters == std::vector<std::uint32_t>{0});
  const auto next = step_relation(m, "0", start);
  REQUIRE(next.size() == 1);
  CHECK(next[0].head == 1);
  CHECK(next[0].counters == std::vector<std::uint32_t>{1});
  CHECK(m.is_rejecting(next[0].state));
  CHECK(step_relation(m, "0", next[0]).empty());
  CHECK(is_valid_configuration(m, "0", next[0]));
  Configuration off = next[0];
  off.head = 5;
  CHECK_FALSE(is_valid_configuration(m, "0", off));
}

TEST_CASE("slim normal form") {
  const auto pd = load_machine(fixture("zeros_ones.json"));
  CHECK_FALSE(is_slim(pd));
  const auto slim = normalize_slim(pd);
  CHECK(is_slim(slim));
  CHECK(normalize_slim(slim) == slim);
  CHECK(slim.accepting.size() == 1);
  CHECK(slim.rejecting.size() == 1);
  CHECK(slim == load_machine(fixture("zeros_ones_slim.json")));
}

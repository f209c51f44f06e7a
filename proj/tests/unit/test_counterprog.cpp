#include <random>

#include "counterlab/counterprog.hpp"
#include "doctest.h"

using namespace counterlab;

TEST_CASE("pair encoding") {
  CHECK(pair_encode(2, 3, 10) == 23);
  CHECK(pair_encode(0, 0, 7) == 0);
  CHECK(pair_decode(30, 10) == std::pair<std::uint64_t, std::uint64_t>{3, 0});
  CHECK_THROWS_AS(pair_encode(10, 0, 10), std::out_of_range);
  CHECK_THROWS_AS(pair_decode(100, 10), std::out_of_range);
}

TEST_CASE("produce p") {
  CHECK(proc_produce_p(2, "abc", 1).env.counters[1] == 6);
  CHECK(proc_produce_p(2, "abc", 2).env.counters[1] == 36);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto n = rng() % 5;
    const auto len = rng() % 5;
    const int t = 1 + static_cast<int>(rng() % 3);
    const int head = static_cast<int>(rng() % (len + 2));
    auto r = proc_produce_p(n, std::string(len, 'a'), t, head);
    std::uint64_t want = 1;
    for (int e = 0; e < t; ++e) want *= n * len;
    CHECK(r.env.counters[1] == want);
    CHECK(r.audit.nonempty_at_exit == (want ? std::vector<std::string>{"CT2"} : std::vector<std::string>{}));
    CHECK(r.env.head == head);
  }
  CHECK(proc_produce_p(3, "ab", 1).audit.instructions < proc_produce_p(3, "ab", 2).audit.instructions);
}

TEST_CASE("zero test and update") {
  const auto names = pairing_counters();
  CounterProgram shape;
  shape.counters = names;
  auto env_for = [&](std::uint64_t v, std::uint64_t p) {
    auto e = CounterEnv::for_input(shape, "");
    e.set(shape, "CT2", p);
    e.set(shape, "CT3", v);
    return e;
  };
  auto e = env_for(0, 10);
  auto z = proc_zero_test(e);
  CHECK(z.first_zero);
  CHECK(z.second_zero);
  e = env_for(5, 10);
  z = proc_zero_test(e);
  CHECK(z.first_zero);
  CHECK_FALSE(z.second_zero);
  e = env_for(30, 10);
  z = proc_zero_test(e);
  CHECK_FALSE(z.first_zero);
  CHECK(z.second_zero);
  CHECK(e.get(shape, "CT3") == 30);

  e = env_for(23, 10);
  proc_update(e, 1, CounterOp::inc);
  CHECK(e.get(shape, "CT3") == 33);
  e = env_for(23, 10);
  proc_update(e, 2, CounterOp::dec);
  CHECK(e.get(shape, "CT3") == 22);
  e = env_for(3, 10);
  CHECK_THROWS_AS(proc_update(e, 1, CounterOp::dec), ProgramError);
  e = env_for(9, 10);
  CHECK_THROWS_AS(proc_update(e, 2, CounterOp::inc), ProgramError);
}

TEST_CASE("composite two-counter simulation matches integers") {
  std::mt19937_64 rng(11);
  CounterProgram shape;
  shape.counters = pairing_counters();
  const std::uint64_t p = 12;
  for (int trial = 0; trial < 50; ++trial) {
    auto e = CounterEnv::for_input(shape, "");
    e.set(shape, "CT2", p);
    std::uint64_t c[2] = {0, 0};
    for (int step = 0; step < 30; ++step) {
      auto z = proc_zero_test(e);
      CHECK(z.first_zero == (c[0] == 0));
      CHECK(z.second_zero == (c[1] == 0));
      CHECK(z.audit.touched <= 4);
      const int j = static_cast<int>(rng() % 2);
      const bool up = rng() % 2 == 0;
      if (up && c[j] + 1 < p) {
        proc_update(e, j + 1, CounterOp::inc);
        ++c[j];
      } else if (!up && c[j] > 0) {
        proc_update(e, j + 1, CounterOp::dec);
        --c[j];
      }
      CHECK(e.get(shape, "CT1") == 0);
      CHECK(e.get(shape, "CT4") == 0);
      CHECK(e.get(shape, "CT2") == p);
      CHECK(e.get(shape, "CT3") == c[0] * p + c[1]);
    }
  }
}

TEST_CASE("static check rejects an unguarded dec") {
  CounterProgram p;
  p.counters = {"A"};
  p.code = {{Op::dec, 0}, {Op::exit, 0}};
  CHECK_THROWS_AS(check_program(p), ProgramError);
  p.code = {{Op::jump_zero, 0, 2}, {Op::dec, 0}, {Op::exit, 0}};
  CHECK_NOTHROW(check_program(p));
}

TEST_CASE("empty program leaves the environment alone") {
  CounterProgram p;
  p.counters = {"A"};
  auto e = CounterEnv::for_input(p, "01", 2);
  e.counters[0] = 5;
  auto r = run_counter_program(p, e);
  CHECK(r.env.counters[0] == 5);
  CHECK(r.env.head == 2);
}

TEST_CASE("stack as counter") {
  CounterProgram p;
  p.counters = {"A"};
  p.code = {{Op::inc, 0}, {Op::inc, 0}, {Op::jump_zero, 0, 5}, {Op::dec, 0}, {Op::exit, 0}, {Op::exit, 1}};
  auto s = stack_as_counter(p, "A");
  CHECK(s.counters.empty());
  auto r = run_counter_program(s, CounterEnv::for_input(s, ""));
  CHECK(r.exit_code == 0);
  CHECK(r.env.stack.empty());

  // Random sequences agree with a plain integer counter.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    ProgramBuilder pb({"A"});
    std::int64_t v = 0;
    const int bad = pb.label();
    for (int i = 0; i < 20; ++i) {
      if (rng() % 2 == 0 || v == 0) {
        pb.inc("A");
        ++v;
      } else {
        pb.jump_zero("A", bad);
        pb.dec("A");
        --v;
      }
    }
    const int zero = pb.label();
    pb.jump_zero("A", zero);
    pb.exit(1);
    pb.bind(zero);
    pb.exit(0);
    pb.bind(bad);
    pb.exit(2);
    auto plain = pb.finish();
    auto on_stack = stack_as_counter(plain, "A");
    auto a = run_counter_program(plain, CounterEnv::for_input(plain, ""));
    auto c = run_counter_program(on_stack, CounterEnv::for_input(on_stack, ""));
    CHECK(a.exit_code == (v == 0 ? 0 : 1));
    CHECK(c.exit_code == a.exit_code);
    CHECK(c.env.stack.empty());
  }
}

TEST_CASE("program json round trip") {
  auto p = zero_test_program();
  auto q = program_from_json(program_to_json(p));
  CHECK(q.code == p.code);
  CHECK(q.counters == p.counters);
}

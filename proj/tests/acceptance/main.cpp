#include <chrono>
#include <cstdio>
#include <exception>

#include "criteria.hpp"

int main() {
  struct Entry {
    const char* name;
    acceptance::Result (*fn)();
  };
  // Coherence runs last so that it sees every verdict pair recorded before it.
  const Entry entries[] = {
      {"pairing round-trip", acceptance::pairing_round_trip},
      {"counter procedures", acceptance::procedures},
      {"counter fusion", acceptance::counter_fusion},
      {"inductive counting", acceptance::inductive_counting},
      {"pushdown complementation", acceptance::pushdown_complement},
      {"counter elimination", acceptance::counter_elimination},
      {"complement of eliminated solver", acceptance::complement_collapse},
      {"equality solver", acceptance::equality_solver},
      {"stack-state complexity", acceptance::stack_state_complexity_count},
      {"executor/oracle coherence", acceptance::coherence},
  };
  int failed = 0, index = 0;
  for (const auto& e : entries) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    acceptance::Result r;
    try {
      r = e.fn();
    } catch (const std::exception& ex) {
      r = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", index, e.name, r.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed ? 1 : 0;
}

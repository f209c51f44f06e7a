#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

#include "counterlab/pdcomplement.hpp"

namespace counterlab {

namespace {

// Surfaces within one step of c: head and counters off by at most one.
std::vector<Surface> neighbours(const MachineSpec& m, const Surface& c, std::uint64_t t) {
  std::vector<Surface> out;
  const int gamma = static_cast<int>(m.stack->alphabet.size());
  Surface d = c;
  std::vector<int> delta(m.counters, -1);
  while (true) {
    bool ok = true;
    for (int j = 0; j < m.counters; ++j) {
      const std::int64_t v = static_cast<std::int64_t>(c.counters[j]) + delta[j];
      ok = ok && v >= 0 && v <= static_cast<std::int64_t>(t);
      if (ok) d.counters[j] = static_cast<std::uint32_t>(v);
    }
    if (ok) {
      for (int q = 0; q < static_cast<int>(m.states.size()); ++q)
        for (int h = c.head - 1; h <= c.head + 1; ++h)
          for (int a = 1; a < gamma; ++a) {
            d.state = q;
            d.head = h;
            d.top = a;
            if (h >= 0) out.push_back(d);
          }
    }
    int j = m.counters - 1;
    while (j >= 0 && delta[j] == 1) delta[j--] = -1;
    if (j < 0) break;
    ++delta[j];
  }
  return out;
}

}  // namespace

nlohmann::json Stage3Event::to_json() const {
  return {{"phase", phase},
          {"popped", counterlab::to_json(popped)},
          {"pushed", pushed},
          {"depth", depth},
          {"blocks", blocks}};
}

Stage3Run stage3_run(const MachineSpec& slim, std::string_view x, std::uint64_t t_x, const Stage3Options& opt) {
  if (!slim.stack) throw std::invalid_argument("stage3_run needs a pushdown machine");
  IntervalSolver solver(slim, x, t_x);
  const SurfaceSteps& st = solver.steps();
  const IntervalSpace space(slim, x.size(), t_x);
  Stage3Run run;

  // Rounds of the stack as run-length blocks; a round reappearing after its
  // block closed breaks consecutiveness.
  std::vector<ConfInterval> stack;
  std::vector<std::pair<std::uint64_t, std::size_t>> blocks;
  std::map<std::uint64_t, std::size_t> live;
  auto push = [&](const ConfInterval& e) {
    if (!blocks.empty() && blocks.back().first == e.r) {
      ++blocks.back().second;
    } else {
      if (live[e.r] > 0) run.consecutive = false;
      blocks.emplace_back(e.r, 1);
    }
    ++live[e.r];
    stack.push_back(e);
  };
  auto pop = [&] {
    ConfInterval e = stack.back();
    stack.pop_back();
    --live[e.r];
    if (--blocks.back().second == 0) blocks.pop_back();
    return e;
  };

  // (1') the roots, one per candidate length.
  auto roots = root_intervals(slim, t_x);
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) push(*it);

  auto record = [&](const char* phase, const ConfInterval& eta, std::size_t pushed) {
    run.max_depth = std::max(run.max_depth, stack.size());
    if (run.trace.size() < opt.trace_limit) run.trace.push_back({phase, eta, pushed, stack.size(), blocks});
  };

  // Expanded intervals.  A second copy adds obligations already pending or met.
  std::set<ConfInterval> seen;

  while (true) {
    // (2') empty stack
    if (stack.empty()) {
      run.outcome = Outcome::accept;
      return run;
    }
    if (run.steps >= opt.step_budget || stack.size() > opt.stack_limit) return run;
    ++run.steps;
    const ConfInterval eta = pop();

    if (eta.s == 0 && eta.l == 0) {
      // (4') a leaf that holds ends the run.
      record("(4')", eta, 0);
      if (eta.from == eta.to) {
        run.outcome = Outcome::reject;
        return run;
      }
      continue;
    }

    if (!seen.insert(eta).second) {
      record("(4')", eta, 0);
      continue;
    }

    if (eta.s == 0) {
      // (i') every interval satisfying cnd1, in enumeration order.
      std::vector<ConfInterval> kids;
      if (eta.l >= 2 && eta.to.top == eta.from.top) {
        for (const auto& c1 : st.pushes(eta.from))
          for (const auto& c2 : neighbours(slim, eta.to, t_x)) {
            const auto back = st.pops(c2, eta.from.top);
            if (!std::binary_search(back.begin(), back.end(), eta.to)) continue;
            for (std::uint64_t s1 = 0; s1 < std::max<std::uint64_t>(t_x, 1); ++s1)
              kids.push_back(ConfInterval{c1, s1, c2, eta.l - 2, eta.r + 1});
          }
        std::sort(kids.begin(), kids.end());
      }
      for (const auto& k : kids) push(k);
      record("(3')(i')", eta, kids.size());
      continue;
    }

    // (ii') one member of each pair satisfying cnd2.
    std::size_t pushed = 0;
    for (std::uint64_t i = 0; i < space.conf_count(); ++i) {
      const Surface c2 = space.conf_at(i);
      for (std::uint64_t l1 = 0; l1 <= eta.l; ++l1) {
        const ConfInterval a{eta.from, 0, c2, l1, eta.r};
        const ConfInterval b{c2, eta.s - 1, eta.to, eta.l - l1, eta.r};
        push(solver.derivable(a) && !solver.derivable(b) ? b : a);
        ++pushed;
      }
    }
    record("(3')(ii')", eta, pushed);
  }
}

}  // namespace counterlab

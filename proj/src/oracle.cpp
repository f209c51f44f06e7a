#include "counterlab/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace counterlab {

namespace {

bool guard_holds(Guard g, std::uint32_t v) {
  switch (g) {
    case Guard::zero: return v == 0;
    case Guard::nonzero: return v != 0;
    default: return true;
  }
}

}  // namespace

std::vector<Configuration> oracle_successors(const MachineSpec& m, std::string_view x,
                                             const Configuration& c) {
  std::vector<Configuration> out;
  if (m.is_halting(c.state)) return out;
  const std::string tape = std::string(1, kLeftEnd) + std::string(x) + kRightEnd;
  const char sym = tape.at(static_cast<std::size_t>(c.head));
  for (const auto& r : m.transitions) {
    if (r.from != c.state || r.read != sym) continue;
    bool ok = true;
    for (int j = 0; j < m.counters && ok; ++j) ok = guard_holds(r.guards[j], c.counters[j]);
    if (!ok) continue;
    if (r.stack_top && (c.stack.empty() || c.stack.back() != *r.stack_top)) continue;
    Configuration d = c;
    d.state = r.to;
    d.head += r.move;
    if (d.head < 0 || d.head >= static_cast<int>(tape.size())) continue;
    for (int j = 0; j < m.counters; ++j) {
      if (r.ops[j] == CounterOp::inc) ++d.counters[j];
      if (r.ops[j] == CounterOp::dec) {
        if (d.counters[j] == 0) {
          ok = false;
          break;
        }
        --d.counters[j];
      }
    }
    if (!ok) continue;
    if (r.stack_op.kind == StackOp::Kind::pop) {
      if (d.stack.size() <= 1) continue;
      d.stack.pop_back();
    } else if (r.stack_op.kind == StackOp::Kind::push) {
      for (int s : r.stack_op.symbols) d.stack.push_back(static_cast<std::uint16_t>(s));
    }
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

Configuration oracle_initial(const MachineSpec& m) {
  Configuration c;
  c.state = m.initial;
  c.head = 0;
  c.counters.assign(static_cast<std::size_t>(m.counters), 0);
  if (m.stack) c.stack.push_back(0);
  return c;
}

struct Frame {
  Configuration config;
  std::vector<Configuration> succ;
  std::size_t next = 0;
};

}  // namespace

Verdict brute_force_decide(const MachineSpec& m, std::string_view x, const OracleBudget& budget) {
  Verdict v;
  auto root = oracle_initial(m);
  if (m.is_accepting(root.state)) {
    v.outcome = Outcome::accept;
    v.witness = {root};
    return v;
  }
  // Smallest depth at which a configuration was fully explored.
  std::map<Configuration, std::uint64_t> explored;
  std::set<Configuration> on_path;
  std::vector<Frame> stack;
  bool truncated = false;
  std::uint64_t expansions = 0;

  stack.push_back({root, oracle_successors(m, x, root), 0});
  on_path.insert(root);
  while (!stack.empty()) {
    auto& top = stack.back();
    const std::uint64_t depth = stack.size() - 1;
    if (top.next == top.succ.size()) {
      auto it = explored.find(top.config);
      if (it == explored.end() || it->second > depth) explored[top.config] = depth;
      on_path.erase(top.config);
      stack.pop_back();
      continue;
    }
    Configuration child = top.succ[top.next++];
    if (m.is_accepting(child.state)) {
      v.outcome = Outcome::accept;
      for (auto& f : stack) v.witness.push_back(f.config);
      v.witness.push_back(std::move(child));
      return v;
    }
    if (on_path.count(child)) continue;  // closes a cycle
    auto seen = explored.find(child);
    if (seen != explored.end() && seen->second <= depth + 1) continue;
    auto grand = oracle_successors(m, x, child);
    if (depth + 1 == budget.cap) {
      if (!grand.empty()) truncated = true;
      continue;
    }
    if (++expansions > budget.node_budget) {
      v.note = "oracle node budget exhausted";
      return v;
    }
    on_path.insert(child);
    stack.push_back({std::move(child), std::move(grand), 0});
  }
  if (truncated) {
    v.note = "step cap exhausted";
    return v;
  }
  v.outcome = Outcome::reject;
  return v;
}

Verdict brute_force_decide(const MachineSpec& m, std::string_view x, std::uint64_t cap) {
  OracleBudget b;
  b.cap = cap;
  return brute_force_decide(m, x, b);
}

EquivalenceReport check_equivalence(const MachineSpec& m1, const MachineSpec& m2,
                                    const std::vector<std::string>& inputs, const OracleBudget& budget) {
  std::vector<std::string> sorted = inputs;
  std::sort(sorted.begin(), sorted.end(), [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  EquivalenceReport r;
  for (const auto& x : sorted) {
    const auto a = brute_force_decide(m1, x, budget).outcome;
    const auto b = brute_force_decide(m2, x, budget).outcome;
    ++r.checked;
    if (a == Outcome::unknown || b == Outcome::unknown) r.unknowns.push_back({x, a, b});
    else if (a != b) r.disagreements.push_back({x, a, b});
  }
  return r;
}

nlohmann::json to_json(const EquivalenceReport& r) {
  auto rows = [](const std::vector<Disagreement>& v) {
    auto arr = nlohmann::json::array();
    for (const auto& d : v)
      arr.push_back({{"input", d.input}, {"verdict1", to_string(d.first)}, {"verdict2", to_string(d.second)}});
    return arr;
  };
  return {{"checked", r.checked},
          {"equivalent", r.equivalent()},
          {"disagreements", rows(r.disagreements)},
          {"unknown", rows(r.unknowns)}};
}

std::vector<std::vector<Configuration>> enumerate_accepting_paths(const MachineSpec& m, std::string_view x,
                                                                  const OracleBudget& budget,
                                                                  std::size_t limit, bool* complete) {
  std::vector<std::vector<Configuration>> found;
  if (complete) *complete = true;
  auto root = oracle_initial(m);
  if (m.is_accepting(root.state)) return {{root}};

  auto dedup = [&](const Configuration& c) {
    auto s = oracle_successors(m, x, c);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  };
  std::set<Configuration> on_path{root};
  std::vector<Frame> stack;
  stack.push_back({root, dedup(root), 0});
  std::uint64_t expansions = 0;
  while (!stack.empty() && found.size() < limit) {
    auto& top = stack.back();
    if (top.next == top.succ.size()) {
      on_path.erase(top.config);
      stack.pop_back();
      continue;
    }
    Configuration child = top.succ[top.next++];
    if (m.is_accepting(child.state)) {
      std::vector<Configuration> path;
      for (auto& f : stack) path.push_back(f.config);
      path.push_back(std::move(child));
      found.push_back(std::move(path));
      continue;
    }
    if (on_path.count(child)) continue;
    if (stack.size() == budget.cap || ++expansions > budget.node_budget) {
      if (complete && !dedup(child).empty()) *complete = false;
      if (expansions > budget.node_budget) break;
      continue;
    }
    auto succ = dedup(child);
    on_path.insert(child);
    stack.push_back({std::move(child), std::move(succ), 0});
  }
  return found;
}

UnambiguityReport check_unambiguous(const MachineSpec& m, const PromiseFamily& family, std::uint64_t n,
                                    std::size_t max_len, const OracleBudget& budget) {
  UnambiguityReport rep;
  for (const auto& w : family.sampler(n, max_len)) {
    if (!family.promised(n, w)) continue;
    bool complete = true;
    auto paths = enumerate_accepting_paths(m, w, budget, 2, &complete);
    rep.complete = rep.complete && complete;
    if (paths.size() >= 2) {
      rep.unambiguous = false;
      rep.input = w;
      rep.paths = std::move(paths);
      return rep;
    }
  }
  return rep;
}

}  // namespace counterlab

#include "counterlab/executor.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace counterlab {

std::uint64_t default_step_cap(const MachineSpec& m, std::size_t input_length, int exponent) {
  const std::uint64_t base = state_complexity(m) * input_length + 2;
  std::uint64_t cap = 1;
  for (int i = 0; i < exponent; ++i) cap *= base;
  return cap;
}

RunBudget default_budget(const MachineSpec& m, std::string_view x, int exponent) {
  RunBudget b;
  b.step_cap = default_step_cap(m, x.size(), exponent);
  return b;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::accept: return "accept";
    case Outcome::reject: return "reject";
    default: return "unknown";
  }
}

Verdict decide(const MachineSpec& m, std::string_view x, const RunBudget& budget) {
  Stepper stepper(m, x);
  std::vector<Configuration> nodes;
  std::vector<std::int64_t> parent;
  std::unordered_map<Configuration, std::int64_t, ConfigurationHash> index;

  auto witness_to = [&](std::int64_t at) {
    std::vector<Configuration> path;
    for (auto i = at; i >= 0; i = parent[static_cast<std::size_t>(i)]) path.push_back(nodes[i]);
    std::reverse(path.begin(), path.end());
    return path;
  };

  Verdict v;
  nodes.push_back(initial_configuration(m));
  parent.push_back(-1);
  index.emplace(nodes[0], 0);
  if (m.is_accepting(nodes[0].state)) {
    v.outcome = Outcome::accept;
    v.witness = witness_to(0);
    return v;
  }

  std::size_t layer_begin = 0, layer_end = 1;
  std::vector<Configuration> succ;
  for (std::uint64_t depth = 0; layer_begin < layer_end; ++depth) {
    if (depth == budget.step_cap) {
      // The frontier may only be expanded if nothing new lies beyond it.
      for (std::size_t i = layer_begin; i < layer_end; ++i) {
        stepper.successors(nodes[i], succ);
        for (const auto& s : succ) {
          if (!index.count(s)) {
            v.note = "step cap exhausted";
            return v;
          }
        }
      }
      break;
    }
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      stepper.successors(nodes[i], succ);
      for (auto& s : succ) {
        if (index.count(s)) continue;
        if (nodes.size() >= budget.config_cap) {
          v.note = "configuration cap exhausted";
          return v;
        }
        const auto id = static_cast<std::int64_t>(nodes.size());
        index.emplace(s, id);
        parent.push_back(static_cast<std::int64_t>(i));
        nodes.push_back(std::move(s));
        if (m.is_accepting(nodes.back().state)) {
          v.outcome = Outcome::accept;
          v.witness = witness_to(id);
          return v;
        }
      }
    }
    layer_begin = layer_end;
    layer_end = nodes.size();
  }
  v.outcome = Outcome::reject;
  return v;
}

Layer reachable_exact(const MachineSpec& m, std::string_view x, std::uint64_t i, std::uint64_t config_cap) {
  Stepper stepper(m, x);
  std::unordered_set<Configuration, ConfigurationHash> layer{initial_configuration(m)};
  std::vector<Configuration> succ;
  Layer out;
  for (std::uint64_t d = 0; d < i && !layer.empty(); ++d) {
    std::unordered_set<Configuration, ConfigurationHash> next;
    for (const auto& c : layer) {
      stepper.successors(c, succ);
      for (auto& s : succ) next.insert(std::move(s));
      if (next.size() > config_cap) {
        out.exhausted = true;
        return out;
      }
    }
    layer = std::move(next);
  }
  out.configs.assign(layer.begin(), layer.end());
  std::sort(out.configs.begin(), out.configs.end());
  return out;
}

PathCount count_accepting_paths(const MachineSpec& m, std::string_view x, const RunBudget& budget,
                                std::uint64_t limit) {
  Stepper stepper(m, x);
  using Counts = std::unordered_map<Configuration, std::uint64_t, ConfigurationHash>;
  Counts layer{{initial_configuration(m), 1}};
  PathCount pc;
  auto add = [&](std::uint64_t& into, std::uint64_t v) {
    into = (into > limit - std::min(limit, v)) ? limit : into + v;
  };
  std::vector<Configuration> succ;
  for (std::uint64_t d = 0;; ++d) {
    Counts next;
    bool live = false;
    for (const auto& [c, n] : layer) {
      if (m.is_accepting(c.state)) {
        add(pc.count, n);
        continue;
      }
      stepper.successors(c, succ);
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      if (succ.empty()) continue;
      live = true;
      if (d == budget.step_cap) continue;
      for (auto& s : succ) add(next[std::move(s)], n);
    }
    if (pc.count >= limit) {
      pc.count = limit;
      pc.saturated = true;
      return pc;
    }
    if (d == budget.step_cap) {
      pc.lower_bound = live;
      return pc;
    }
    if (next.size() > budget.config_cap) {
      pc.lower_bound = true;
      return pc;
    }
    if (next.empty()) return pc;
    layer = std::move(next);
  }
}

Runtime runtime_max(const MachineSpec& m, std::string_view x, const RunBudget& budget) {
  Stepper stepper(m, x);
  std::unordered_set<Configuration, ConfigurationHash> layer{initial_configuration(m)};
  std::vector<Configuration> succ;
  Runtime rt;
  for (std::uint64_t d = 0; !layer.empty(); ++d) {
    std::unordered_set<Configuration, ConfigurationHash> next;
    bool live = false;
    for (const auto& c : layer) {
      stepper.successors(c, succ);
      if (succ.empty()) {
        rt.steps = d;
        continue;
      }
      live = true;
      if (d == budget.step_cap) continue;
      for (auto& s : succ) next.insert(std::move(s));
    }
    if (d == budget.step_cap || next.size() > budget.config_cap) {
      rt.unknown = live;
      return rt;
    }
    layer = std::move(next);
  }
  return rt;
}

bool replay_path(const MachineSpec& m, std::string_view x, const std::vector<Configuration>& path) {
  if (path.empty() || path.front() != initial_configuration(m)) return false;
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto succ = step_relation(m, x, path[i - 1]);
    if (!std::binary_search(succ.begin(), succ.end(), path[i])) return false;
  }
  return true;
}

}  // namespace counterlab

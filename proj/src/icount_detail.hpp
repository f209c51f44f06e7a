// Shared helpers of the inductive-counting modes.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "counterlab/machine.hpp"

namespace counterlab::icdetail {

inline std::vector<Configuration> image(const Stepper& st, const std::vector<Configuration>& layer) {
  std::vector<Configuration> next, succ;
  for (const auto& c : layer) {
    st.successors(c, succ);
    next.insert(next.end(), succ.begin(), succ.end());
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return next;
}

// V_0 .. V_r; throws when a layer outgrows the cap.
inline std::vector<std::vector<Configuration>> exact_layers(const MachineSpec& m, const Stepper& st,
                                                            std::uint64_t r, std::uint64_t cap = 2'000'000) {
  std::vector<std::vector<Configuration>> out{{initial_configuration(m)}};
  for (std::uint64_t i = 1; i <= r; ++i) {
    out.push_back(image(st, out.back()));
    if (out.back().size() > cap) throw std::runtime_error("configuration cap exhausted");
  }
  return out;
}

// Number of configurations with counters bounded by r.
inline double universe_size(const MachineSpec& m, std::size_t len, std::uint64_t r) {
  double n = static_cast<double>(m.states.size()) * static_cast<double>(len + 2);
  for (int j = 0; j < m.counters; ++j) n *= static_cast<double>(r + 1);
  return n;
}

// Visits the universe in lexicographic order until fn returns false.
inline bool for_each_conf(const MachineSpec& m, std::size_t len, std::uint64_t r,
                          const std::function<bool(const Configuration&)>& fn) {
  Configuration c;
  c.counters.assign(m.counters, 0);
  for (c.state = 0; c.state < static_cast<int>(m.states.size()); ++c.state) {
    for (c.head = 0; c.head <= static_cast<int>(len) + 1; ++c.head) {
      std::fill(c.counters.begin(), c.counters.end(), 0);
      while (true) {
        if (!fn(c)) return false;
        int j = m.counters - 1;
        while (j >= 0 && c.counters[j] == r) c.counters[j--] = 0;
        if (j < 0) break;
        ++c.counters[j];
      }
    }
  }
  return true;
}

inline bool contains(const std::vector<Configuration>& sorted, const Configuration& c) {
  return std::binary_search(sorted.begin(), sorted.end(), c);
}

}  // namespace counterlab::icdetail

#include "counterlab/icount.hpp"

#include <algorithm>
#include <unordered_map>

#include "icount_detail.hpp"

namespace counterlab {

namespace {

using icdetail::image;

std::size_t layer_hash(const std::vector<Configuration>& layer) {
  ConfigurationHash h;
  std::size_t seed = layer.size();
  for (const auto& c : layer) seed ^= h(c) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

}  // namespace

std::vector<LayerCount> layer_counts(const MachineSpec& m, std::string_view x, std::uint64_t r, bool keep_layers,
                                     std::uint64_t config_cap) {
  Stepper st(m, x);
  std::vector<LayerCount> out;
  std::vector<Configuration> layer{initial_configuration(m)};
  for (std::uint64_t i = 0; i <= r; ++i) {
    if (layer.size() > config_cap) throw std::runtime_error("configuration cap exhausted");
    LayerCount lc{i, layer.size(), {}};
    if (keep_layers) lc.layer = layer;
    out.push_back(std::move(lc));
    if (i < r) layer = image(st, layer);
  }
  return out;
}

ICResult complement_decide_ic(const MachineSpec& m, std::string_view x, const ICOptions& opt) {
  if (m.stack) throw std::invalid_argument("inductive counting applies to stackless machines");
  const std::uint64_t r = opt.r ? opt.r : default_step_cap(m, x.size());
  Stepper st(m, x);
  ICResult res;
  std::vector<Configuration> layer{initial_configuration(m)};
  // Earlier layers by hash, to spot a periodic sequence.
  std::unordered_multimap<std::size_t, std::vector<Configuration>> history;

  for (std::uint64_t i = 0;; ++i) {
    // N_i counts V_i; the run fails as soon as fewer non-accepting
    // configurations than N_i are found.
    const auto non_accepting = static_cast<std::uint64_t>(
        std::count_if(layer.begin(), layer.end(), [&](const Configuration& c) { return !m.is_accepting(c.state); }));
    LayerCount lc{i, layer.size(), {}};
    if (opt.keep_layers) lc.layer = layer;
    res.layers.push_back(std::move(lc));
    if (non_accepting != layer.size()) {
      res.verdict.outcome = Outcome::reject;
      res.verdict.note = "accepting configuration in layer " + std::to_string(i);
      return res;
    }
    if (layer.empty()) {
      res.verdict.outcome = Outcome::accept;
      res.verdict.note = "layer " + std::to_string(i) + " is empty";
      return res;
    }
    const auto h = layer_hash(layer);
    auto [lo, hi] = history.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (it->second == layer) {
        res.verdict.outcome = Outcome::accept;
        res.verdict.note = "layer " + std::to_string(i) + " repeats an earlier layer";
        return res;
      }
    }
    if (i == r) {
      res.verdict.note = "layer bound exhausted";
      return res;
    }
    history.emplace(h, layer);
    layer = image(st, layer);
    if (layer.size() > opt.config_cap) {
      res.verdict.note = "configuration cap exhausted";
      return res;
    }
  }
}

std::string to_string(GuessStatus s) {
  switch (s) {
    case GuessStatus::aborted: return "aborted";
    case GuessStatus::accept: return "accept";
    case GuessStatus::reject: return "reject";
    default: return "unknown";
  }
}

bool ExhaustiveGuessReport::some(GuessStatus s) const {
  auto it = runs.find(s);
  return it != runs.end() && it->second > 0;
}

nlohmann::json ICAudit::to_json() const {
  return {{"registers", registers}, {"used", used}, {"bound", bound}, {"status", to_string(status)}, {"counts", counts}};
}

}  // namespace counterlab

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "counterlab/pdcomplement.hpp"

namespace counterlab {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw std::overflow_error("interval space too large");
  return a * b;
}

void sort_unique(std::vector<Surface>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool has(const std::vector<Surface>& v, const Surface& c) { return std::find(v.begin(), v.end(), c) != v.end(); }

}  // namespace

Surface surface(const Configuration& c) {
  return Surface{c.state, c.head, c.stack.empty() ? 0 : c.stack.back(), c.counters};
}

nlohmann::json to_json(const Surface& c) {
  return {{"state", c.state}, {"head", c.head}, {"top", c.top}, {"counters", c.counters}};
}

nlohmann::json to_json(const ConfInterval& eta) {
  return {{"C", to_json(eta.from)}, {"s", eta.s}, {"C'", to_json(eta.to)}, {"l", eta.l}, {"r", eta.r}};
}

// ---- interval space ---------------------------------------------------------

IntervalSpace::IntervalSpace(const MachineSpec& m, std::size_t input_length, std::uint64_t t_x)
    : IntervalSpace(static_cast<int>(m.states.size()), input_length,
                    m.stack ? static_cast<int>(m.stack->alphabet.size()) : 1, m.counters, t_x) {}

IntervalSpace::IntervalSpace(int states, std::size_t input_length, int stack_symbols, int counters,
                             std::uint64_t t_x)
    : states_(states), heads_(static_cast<int>(input_length) + 2), gamma_(stack_symbols), k_(counters), t_(t_x) {
  if (states <= 0 || stack_symbols <= 0 || counters < 0) throw std::invalid_argument("bad interval space");
  conf_count_ = checked_mul(checked_mul(states_, heads_), gamma_);
  for (int j = 0; j < k_; ++j) conf_count_ = checked_mul(conf_count_, t_ + 1);
}

std::uint64_t IntervalSpace::size() const {
  return checked_mul(checked_mul(conf_count_, conf_count_), checked_mul(checked_mul(t_, t_), t_));
}

bool IntervalSpace::in_range(const Surface& c) const {
  if (c.state < 0 || c.state >= states_ || c.head < 0 || c.head >= heads_ || c.top < 0 || c.top >= gamma_)
    return false;
  if (static_cast<int>(c.counters.size()) != k_) return false;
  return std::all_of(c.counters.begin(), c.counters.end(), [&](std::uint32_t v) { return v <= t_; });
}

bool IntervalSpace::in_range(const ConfInterval& eta) const {
  return in_range(eta.from) && in_range(eta.to) && eta.s < t_ && eta.l < t_ && eta.r < t_;
}

std::uint64_t IntervalSpace::conf_index(const Surface& c) const {
  if (!in_range(c)) throw std::out_of_range("surface configuration outside CONF");
  std::uint64_t i = (static_cast<std::uint64_t>(c.state) * heads_ + c.head) * gamma_ + c.top;
  for (auto v : c.counters) i = i * (t_ + 1) + v;
  return i;
}

Surface IntervalSpace::conf_at(std::uint64_t i) const {
  if (i >= conf_count_) throw std::out_of_range("configuration index out of range");
  Surface c;
  c.counters.assign(k_, 0);
  for (int j = k_ - 1; j >= 0; --j) {
    c.counters[j] = static_cast<std::uint32_t>(i % (t_ + 1));
    i /= t_ + 1;
  }
  c.top = static_cast<int>(i % gamma_);
  i /= gamma_;
  c.head = static_cast<int>(i % heads_);
  c.state = static_cast<int>(i / heads_);
  return c;
}

std::uint64_t IntervalSpace::index(const ConfInterval& eta) const {
  if (!in_range(eta)) throw std::out_of_range("interval outside the interval space");
  std::uint64_t i = conf_index(eta.from);
  i = i * t_ + eta.s;
  i = i * conf_count_ + conf_index(eta.to);
  i = i * t_ + eta.l;
  return i * t_ + eta.r;
}

ConfInterval IntervalSpace::at(std::uint64_t i) const {
  if (i >= size()) throw std::out_of_range("interval index out of range");
  ConfInterval eta;
  eta.r = i % t_;
  i /= t_;
  eta.l = i % t_;
  i /= t_;
  eta.to = conf_at(i % conf_count_);
  i /= conf_count_;
  eta.s = i % t_;
  eta.from = conf_at(i / t_);
  return eta;
}

std::pair<ConfInterval, ConfInterval> IntervalSpace::pair_at(std::uint64_t i, std::uint64_t j) const {
  return {at(i), at(j)};
}

void IntervalSpace::for_each(const std::function<bool(std::uint64_t, const ConfInterval&)>& fn) const {
  const auto n = size();
  for (std::uint64_t i = 0; i < n; ++i)
    if (!fn(i, at(i))) return;
}

// ---- surface steps ----------------------------------------------------------

SurfaceSteps::SurfaceSteps(const MachineSpec& m, std::string_view x, std::uint64_t t_x) : stepper_(m, x), t_(t_x) {
  if (!m.stack) throw std::invalid_argument("surface steps need a pushdown machine");
}

Configuration SurfaceSteps::concrete(const Surface& c, int under) const {
  Configuration k;
  k.state = c.state;
  k.head = c.head;
  k.counters = c.counters;
  k.stack = {0};
  if (c.top != 0) {
    if (under != 0) k.stack.push_back(static_cast<std::uint16_t>(under));
    k.stack.push_back(static_cast<std::uint16_t>(c.top));
  }
  return k;
}

std::vector<Surface> SurfaceSteps::pushes(const Surface& c) const {
  const auto k = concrete(c, 0);
  std::vector<Surface> out;
  for (const auto& n : stepper_.successors(k)) {
    if (n.stack.size() != k.stack.size() + 1) continue;
    if (std::any_of(n.counters.begin(), n.counters.end(), [&](std::uint32_t v) { return v > t_; })) continue;
    out.push_back(surface(n));
  }
  sort_unique(out);
  return out;
}

std::vector<Surface> SurfaceSteps::pops(const Surface& c, int under) const {
  if (c.top == 0) return {};
  const auto k = concrete(c, under);
  std::vector<Surface> out;
  for (const auto& n : stepper_.successors(k)) {
    if (n.stack.size() + 1 != k.stack.size()) continue;
    if (std::any_of(n.counters.begin(), n.counters.end(), [&](std::uint32_t v) { return v > t_; })) continue;
    out.push_back(surface(n));
  }
  sort_unique(out);
  return out;
}

// ---- split conditions -------------------------------------------------------

bool cnd1(const ConfInterval& eta, const ConfInterval& eta1, const MachineSpec& m, std::string_view x) {
  if (eta.s != 0 || eta.l < 2) throw std::invalid_argument("cnd1 needs a basic interval of length at least 2");
  if (eta1.l + 2 != eta.l) return false;
  SurfaceSteps st(m, x, std::numeric_limits<std::uint32_t>::max());
  return has(st.pushes(eta.from), eta1.from) && has(st.pops(eta1.to, eta.from.top), eta.to);
}

bool cnd2(const ConfInterval& eta, const ConfInterval& eta1, const ConfInterval& eta2, const MachineSpec&,
          std::string_view) {
  if (eta.s < 1) throw std::invalid_argument("cnd2 needs an interval with s >= 1");
  return eta1.from == eta.from && eta2.to == eta.to && eta1.to == eta2.from && eta1.s == 0 &&
         eta2.s + 1 == eta.s && eta.l == eta1.l + eta2.l;
}

bool rounds_consecutive(const std::vector<std::uint64_t>& rounds) {
  std::vector<std::uint64_t> closed;
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    if (i > 0 && rounds[i] != rounds[i - 1]) closed.push_back(rounds[i - 1]);
    if (std::find(closed.begin(), closed.end(), rounds[i]) != closed.end()) return false;
  }
  return true;
}

}  // namespace counterlab

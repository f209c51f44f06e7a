#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "counterlab/pdcomplement.hpp"

namespace counterlab {

namespace {

void sort_unique(std::vector<Surface>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool has(const std::vector<Surface>& v, const Surface& c) { return std::binary_search(v.begin(), v.end(), c); }

}  // namespace

// ---- derivability -----------------------------------------------------------

struct IntervalSolver::Impl {
  SurfaceSteps st;
  std::map<std::pair<Surface, std::uint64_t>, std::vector<Surface>> hill;
  std::map<std::pair<Surface, std::uint64_t>, std::vector<Surface>> seq;
  std::map<std::tuple<Surface, std::uint64_t, std::uint64_t>, std::vector<Surface>> seqs;

  Impl(const MachineSpec& m, std::string_view x, std::uint64_t t) : st(m, x, t) {}

  // Basic: a push, a run above the starting height, a pop back onto it.
  const std::vector<Surface>& hills(const Surface& c, std::uint64_t l) {
    auto key = std::make_pair(c, l);
    if (auto it = hill.find(key); it != hill.end()) return it->second;
    std::vector<Surface> out;
    if (l == 0) {
      out = {c};
    } else if (l >= 2) {
      for (const auto& c1 : st.pushes(c))
        for (const auto& c2 : any_seq(c1, l - 2))
          for (const auto& e : st.pops(c2, c.top)) out.push_back(e);
      sort_unique(out);
    }
    return hill.emplace(key, std::move(out)).first->second;
  }

  // Any number of consecutive basic pieces at one height.
  const std::vector<Surface>& any_seq(const Surface& c, std::uint64_t l) {
    auto key = std::make_pair(c, l);
    if (auto it = seq.find(key); it != seq.end()) return it->second;
    std::vector<Surface> out;
    if (l == 0) {
      out = {c};
    } else {
      for (std::uint64_t l1 = 2; l1 <= l; ++l1)
        for (const auto& c2 : hills(c, l1)) {
          const auto& rest = any_seq(c2, l - l1);
          out.insert(out.end(), rest.begin(), rest.end());
        }
      sort_unique(out);
    }
    return seq.emplace(key, std::move(out)).first->second;
  }

  // Exactly s + 1 pieces.
  const std::vector<Surface>& pieces(const Surface& c, std::uint64_t s, std::uint64_t l) {
    if (s == 0) return hills(c, l);
    auto key = std::make_tuple(c, s, l);
    if (auto it = seqs.find(key); it != seqs.end()) return it->second;
    std::vector<Surface> out;
    for (std::uint64_t l1 = 0; l1 <= l; ++l1) {
      if (l1 == 1) continue;
      const auto firsts = hills(c, l1);
      for (const auto& c2 : firsts) {
        const auto& rest = pieces(c2, s - 1, l - l1);
        out.insert(out.end(), rest.begin(), rest.end());
      }
    }
    sort_unique(out);
    return seqs.emplace(key, std::move(out)).first->second;
  }

  bool bounded(const Surface& c) const {
    return std::all_of(c.counters.begin(), c.counters.end(), [&](std::uint32_t v) { return v <= st.t_x(); });
  }
};

IntervalSolver::IntervalSolver(const MachineSpec& m, std::string_view x, std::uint64_t t_x)
    : impl_(std::make_unique<Impl>(m, x, t_x)) {}

IntervalSolver::~IntervalSolver() = default;

bool IntervalSolver::derivable(const ConfInterval& eta) {
  if (!impl_->bounded(eta.from) || !impl_->bounded(eta.to)) return false;
  if (eta.from.counters.size() != static_cast<std::size_t>(impl_->st.machine().counters)) return false;
  return has(impl_->pieces(eta.from, eta.s, eta.l), eta.to);
}

const std::vector<Surface>& IntervalSolver::hills(const Surface& c, std::uint64_t l) { return impl_->hills(c, l); }

std::size_t IntervalSolver::memo_size() const {
  return impl_->hill.size() + impl_->seq.size() + impl_->seqs.size();
}

const SurfaceSteps& IntervalSolver::steps() const { return impl_->st; }

// ---- decision ---------------------------------------------------------------

std::vector<ConfInterval> root_intervals(const MachineSpec& slim, std::uint64_t t_x) {
  std::vector<ConfInterval> out;
  if (slim.accepting.empty()) return out;
  const Surface c0 = surface(initial_configuration(slim));
  Surface fin{slim.accepting.front(), 0, 0, std::vector<std::uint32_t>(slim.counters, 0)};
  for (std::uint64_t l = 0; l <= t_x; ++l) out.push_back(ConfInterval{c0, 0, fin, l, 0});
  return out;
}

PDResult complement_pd(const MachineSpec& m, std::string_view x, const RunBudget& budget) {
  if (!m.stack) throw std::invalid_argument("pushdown complementation needs a pushdown machine");
  const auto slim = normalize_slim(m);
  PDResult res;
  const auto rt = runtime_max(slim, x, budget);
  if (rt.unknown) {
    res.verdict.note = "runtime exceeds the step cap";
    return res;
  }
  res.t_x = rt.steps;
  IntervalSolver solver(slim, x, res.t_x);
  res.verdict.outcome = Outcome::accept;
  for (const auto& eta : root_intervals(slim, res.t_x)) {
    if (solver.derivable(eta)) {
      res.verdict.outcome = Outcome::reject;
      res.verdict.note = "root interval of length " + std::to_string(eta.l) + " is derivable";
      break;
    }
  }
  res.memo = solver.memo_size();
  return res;
}

Verdict complement_decide_pd(const MachineSpec& m, std::string_view x, const RunBudget& budget) {
  return complement_pd(m, x, budget).verdict;
}

}  // namespace counterlab

#include <cmath>
#include <map>
#include <random>
#include <tuple>

#include "counterlab/icount.hpp"
#include "icount_detail.hpp"

namespace counterlab {

namespace {

std::int64_t corruption_at(const std::optional<Corruption>& c, std::uint64_t i) {
  return c && c->layer == i ? c->delta : 0;
}

double binom(std::uint64_t n, std::int64_t k) {
  if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
  double r = 1;
  for (std::int64_t j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  return std::round(r);
}

std::vector<Configuration> dedup_successors(const Stepper& st, const Configuration& c) {
  auto s = st.successors(c);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

class SampledRun {
 public:
  SampledRun(const MachineSpec& m, std::string_view x, std::uint64_t seed) : m_(m), st_(m, x), len_(x.size()), rng_(seed) {}

  bool coin() { return (rng_() & 1) != 0; }

  // A random walk of i steps from C_0; true iff it ends at target.
  bool guess_path(std::uint64_t i, const Configuration& target) {
    Configuration c = initial_configuration(m_);
    for (std::uint64_t s = 0; s < i; ++s) {
      auto next = dedup_successors(st_, c);
      if (next.empty()) return false;
      c = next[rng_() % next.size()];
    }
    return c == target;
  }

  GuessRun run(std::uint64_t r, const std::optional<Corruption>& corrupt) {
    GuessRun out;
    const auto c0 = initial_configuration(m_);
    out.counts.push_back(1);
    if (m_.is_accepting(c0.state)) {
      out.status = GuessStatus::reject;
      return out;
    }
    std::int64_t prev = 1 + corruption_at(corrupt, 0);
    bool live = !st_.successors(c0).empty();
    for (std::uint64_t i = 1; i <= r; ++i) {
      std::int64_t c = 0, nonacc = 0;
      live = false;
      const bool done = icdetail::for_each_conf(m_, len_, r, [&](const Configuration& cand) {
        if (coin()) {
          if (!guess_path(i, cand)) return fail(out, "path guess failed");
          ++c;
          nonacc += !m_.is_accepting(cand.state);
          live = live || !st_.successors(cand).empty();
          return true;
        }
        std::int64_t d = 0;
        const bool inner = icdetail::for_each_conf(m_, len_, r, [&](const Configuration& dd) {
          if (!coin()) return true;
          if (!guess_path(i - 1, dd)) return fail(out, "path guess failed");
          ++d;
          auto succ = dedup_successors(st_, dd);
          if (std::binary_search(succ.begin(), succ.end(), cand))
            return fail(out, "excluded candidate has a counted predecessor");
          return true;
        });
        if (!inner) return false;
        if (d != prev) return fail(out, "predecessor count mismatch");
        return true;
      });
      if (!done) return out;
      if (nonacc != c) {
        out.status = GuessStatus::reject;
        return out;
      }
      const std::int64_t nhat = c + corruption_at(corrupt, i);
      if (nhat < 0) {
        fail(out, "negative count");
        return out;
      }
      out.counts.push_back(static_cast<std::uint64_t>(nhat));
      if (nhat == 0) {
        out.status = GuessStatus::accept;
        return out;
      }
      prev = nhat;
    }
    out.status = live ? GuessStatus::unknown : GuessStatus::accept;
    return out;
  }

 private:
  static bool fail(GuessRun& out, const char* why) {
    out.status = GuessStatus::aborted;
    out.reason = why;
    return false;
  }

  const MachineSpec& m_;
  Stepper st_;
  std::size_t len_;
  std::mt19937_64 rng_;
};

}  // namespace

GuessRun guessing_mode_run(const MachineSpec& m, std::string_view x, std::uint64_t r, std::uint64_t seed,
                           std::optional<Corruption> corrupt) {
  if (m.stack) throw std::invalid_argument("inductive counting applies to stackless machines");
  return SampledRun(m, x, seed).run(r, corrupt);
}

ExhaustiveGuessReport exhaustive_guessing(const MachineSpec& m, std::string_view x, std::uint64_t r,
                                          std::optional<Corruption> corrupt) {
  if (m.stack) throw std::invalid_argument("inductive counting applies to stackless machines");
  Stepper st(m, x);
  const auto layers = icdetail::exact_layers(m, st, r);
  ExhaustiveGuessReport rep;
  const auto c0 = initial_configuration(m);
  if (m.is_accepting(c0.state)) {
    rep.runs[GuessStatus::reject] = 1;
    return rep;
  }
  const double universe = icdetail::universe_size(m, x.size(), r);
  // Runs alive at the start of a layer, grouped by their N̂_{i-1}.
  std::map<std::int64_t, double> groups;
  {
    const std::int64_t n0 = 1 + corruption_at(corrupt, 0);
    if (n0 < 0)
      rep.aborted += 1;
    else if (n0 == 0)
      rep.runs[GuessStatus::accept] += 1;
    else if (r == 0)
      rep.runs[st.successors(c0).empty() ? GuessStatus::accept : GuessStatus::unknown] += 1;
    else
      groups[n0] = 1;
  }
  for (std::uint64_t i = 1; i <= r && !groups.empty(); ++i) {
    const auto& prev = layers[i - 1];
    const auto& cur = layers[i];
    // Predecessors in V_{i-1} of each member of V_i.
    std::vector<std::uint64_t> preds(cur.size(), 0);
    for (const auto& d : prev)
      for (const auto& s : dedup_successors(st, d))
        ++preds[std::lower_bound(cur.begin(), cur.end(), s) - cur.begin()];
    const double outside = universe - static_cast<double>(cur.size());

    std::map<std::int64_t, double> next_groups;
    for (const auto& [nprev, weight] : groups) {
      // Non-members: the path guess aborts; exclusion survives on every
      // subset of V_{i-1} of the claimed size.
      const double b0 = binom(prev.size(), nprev);
      rep.aborted += weight * outside;
      if (outside > 0 && b0 == 0) {
        rep.aborted += weight;
        continue;
      }
      using Key = std::tuple<std::int64_t, std::int64_t, bool>;  // c, c_nonacc, live counted
      std::map<Key, double> dp{{{0, 0, false}, weight * std::pow(b0, outside)}};
      for (std::size_t j = 0; j < cur.size(); ++j) {
        const bool acc = m.is_accepting(cur[j].state);
        const bool live = !st.successors(cur[j]).empty();
        const double keep = binom(prev.size() - preds[j], nprev);
        std::map<Key, double> nd;
        for (const auto& [k, w] : dp) {
          auto [c, nonacc, lv] = k;
          nd[{c + 1, nonacc + !acc, lv || live}] += w;
          if (keep > 0)
            nd[k] += w * keep;
          else
            rep.aborted += w;
        }
        dp = std::move(nd);
      }
      for (const auto& [k, w] : dp) {
        auto [c, nonacc, lv] = k;
        if (nonacc != c) {
          rep.runs[GuessStatus::reject] += w;
          continue;
        }
        const std::int64_t nhat = c + corruption_at(corrupt, i);
        if (nhat < 0)
          rep.aborted += w;
        else if (nhat == 0)
          rep.runs[GuessStatus::accept] += w;
        else if (i == r)
          rep.runs[lv ? GuessStatus::unknown : GuessStatus::accept] += w;
        else
          next_groups[nhat] += w;
      }
    }
    groups = std::move(next_groups);
  }
  return rep;
}

}  // namespace counterlab

#include "counterlab/icount.hpp"
#include "icount_detail.hpp"

namespace counterlab {

namespace {

// Named registers with the largest value each one has held.
class RegisterFile {
 public:
  explicit RegisterFile(int k) {
    auto add = [&](const std::string& n) { names_.push_back(n); };
    for (int j = 1; j <= 5; ++j) add("CT" + std::to_string(j));
    for (int j = 1; j <= k; ++j) add("eCT" + std::to_string(j));
    add("CT1'");
    add("CT2'");
    add("CT5'");
    for (int j = 1; j <= k; ++j) add("eCT'" + std::to_string(j));
    add("CT5''");
    for (int j = 1; j <= k; ++j) add("eCT''" + std::to_string(j));
    add("CT10");
    add("CT3'");
    for (int j = 0; j <= k; ++j) add("enum" + std::to_string(j));
    for (int j = 0; j <= k; ++j) add("bst" + std::to_string(j));
    max_.assign(names_.size(), 0);
    touched_.assign(names_.size(), false);
  }

  int id(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    throw std::logic_error("unknown register " + name);
  }

  void set(int r, std::uint64_t v) {
    touched_[r] = true;
    max_[r] = std::max(max_[r], v);
  }

  std::size_t size() const { return names_.size(); }

  std::map<std::string, std::uint64_t> touched() const {
    std::map<std::string, std::uint64_t> out;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (touched_[i]) out[names_[i]] = max_[i];
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::uint64_t> max_;
  std::vector<bool> touched_;
};

// A configuration held as a head register followed by one register per counter.
struct Bank {
  int head;
  std::vector<int> counters;
};

class InformedRun {
 public:
  InformedRun(const MachineSpec& m, std::string_view x, std::uint64_t r)
      : m_(m), st_(m, x), len_(x.size()), r_(r), regs_(m.counters) {
    layers_ = icdetail::exact_layers(m, st_, r);
    auto bank = [&](const std::string& head, const std::string& prefix, int from) {
      Bank b{regs_.id(head), {}};
      for (int j = 0; j < m.counters; ++j) b.counters.push_back(regs_.id(prefix + std::to_string(j + from)));
      return b;
    };
    cand_ = bank("CT4", "eCT", 1);
    other_ = bank("CT2'", "eCT''", 1);
    path_ = bank("CT3'", "eCT'", 1);
    succ_ = bank("enum0", "enum", 1);
    copy_ = bank("bst0", "bst", 1);
  }

  ICAudit audit() {
    ICAudit a;
    a.status = run();
    a.counts = counts_;
    a.registers = regs_.touched();
    a.used = a.registers.size();
    a.bound = 5 * static_cast<std::size_t>(m_.counters) + 13;
    return a;
  }

 private:
  void load(const Bank& b, const Configuration& c) {
    regs_.set(b.head, static_cast<std::uint64_t>(c.head));
    for (int j = 0; j < m_.counters; ++j) regs_.set(b.counters[j], c.counters[j]);
  }

  // Walks C_0 -> target in i steps, choosing successors that still reach it.
  void walk(std::uint64_t i, const Configuration& target, int step_reg) {
    std::vector<std::vector<Configuration>> back(i + 1);
    back[i] = {target};
    for (std::uint64_t j = i; j-- > 0;)
      for (const auto& d : layers_[j])
        for (const auto& s : st_.successors(d))
          if (icdetail::contains(back[j + 1], s)) {
            back[j].push_back(d);
            break;
          }
    Configuration c = initial_configuration(m_);
    for (std::uint64_t s = 0; s < i; ++s) {
      for (const auto& n : st_.successors(c))
        if (icdetail::contains(back[s + 1], n)) {
          c = n;
          break;
        }
      regs_.set(step_reg, s + 1);
      load(path_, c);
    }
    if (c != target) throw std::logic_error("informed path guess missed its target");
  }

  // D |- C, compared register by register against a copy of C.
  bool derives(const Configuration& d, const Configuration& c) {
    load(copy_, c);
    for (const auto& s : st_.successors(d)) {
      load(succ_, s);
      if (s == c) return true;
    }
    return false;
  }

  GuessStatus run() {
    const int ct1 = regs_.id("CT1"), ct2 = regs_.id("CT2"), ct3 = regs_.id("CT3"), ct5 = regs_.id("CT5");
    const int ct1p = regs_.id("CT1'"), ct5p = regs_.id("CT5'"), ct5pp = regs_.id("CT5''");
    regs_.set(regs_.id("CT10"), r_);
    const auto c0 = initial_configuration(m_);
    if (m_.is_accepting(c0.state)) return GuessStatus::reject;
    std::uint64_t prev = 1;
    counts_ = {prev};
    regs_.set(ct2, prev);
    bool live = !st_.successors(c0).empty();
    for (std::uint64_t i = 1; i <= r_; ++i) {
      regs_.set(ct1, i);
      std::uint64_t c = 0, nonacc = 0;
      regs_.set(ct3, 0);
      regs_.set(ct5pp, 0);
      live = false;
      icdetail::for_each_conf(m_, len_, r_, [&](const Configuration& cand) {
        load(cand_, cand);
        if (icdetail::contains(layers_[i], cand)) {
          walk(i, cand, ct1p);
          regs_.set(ct3, ++c);
          if (!m_.is_accepting(cand.state)) regs_.set(ct5pp, ++nonacc);
          live = live || !st_.successors(cand).empty();
          return true;
        }
        // Candidates D guessed outside V_{i-1} only pass through CT2' and eCT''.
        std::uint64_t d = 0;
        regs_.set(ct5, 0);
        for (const auto& dd : layers_[i - 1]) {
          load(other_, dd);
          walk(i - 1, dd, ct5p);
          regs_.set(ct5, ++d);
          if (derives(dd, cand)) throw std::logic_error("non-member has a predecessor");
        }
        if (d != prev) throw std::logic_error("layer count mismatch");
        return true;
      });
      counts_.push_back(c);
      if (nonacc != c) return GuessStatus::reject;
      if (c == 0) return GuessStatus::accept;
      prev = c;
      regs_.set(ct2, prev);
    }
    return live ? GuessStatus::unknown : GuessStatus::accept;
  }

  const MachineSpec& m_;
  Stepper st_;
  std::size_t len_;
  std::uint64_t r_;
  RegisterFile regs_;
  std::vector<std::vector<Configuration>> layers_;
  std::vector<std::uint64_t> counts_;
  Bank cand_, other_, path_, succ_, copy_;
};

}  // namespace

ICAudit audit_ic(const MachineSpec& m, std::string_view x, std::uint64_t r) {
  if (m.stack) throw std::invalid_argument("inductive counting applies to stackless machines");
  if (r == 0) {
    ICOptions opt;
    const auto res = complement_decide_ic(m, x, opt);
    r = std::max<std::uint64_t>(1, res.layers.size() - 1);
  }
  return InformedRun(m, x, r).audit();
}

}  // namespace counterlab

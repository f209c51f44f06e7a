#include "counterlab/families.hpp"

#include <algorithm>
#include <stdexcept>

#include "counterlab/builder.hpp"

namespace counterlab {

std::uint64_t length_size(std::string_view w) { return w.size(); }

std::vector<std::string> strings_of_length(const std::vector<char>& alphabet, std::size_t len) {
  std::vector<std::string> out;
  if (alphabet.empty()) {
    if (len == 0) out.emplace_back();
    return out;
  }
  std::vector<std::size_t> digits(len, 0);
  std::string cur(len, alphabet[0]);
  while (true) {
    out.push_back(cur);
    std::size_t i = len;
    while (i > 0) {
      --i;
      if (++digits[i] < alphabet.size()) {
        cur[i] = alphabet[digits[i]];
        break;
      }
      digits[i] = 0;
      cur[i] = alphabet[0];
      if (i == 0) return out;
    }
    if (len == 0) return out;
  }
}

std::vector<std::string> strings_up_to(const std::vector<char>& alphabet, std::size_t max_len) {
  std::vector<std::string> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    auto layer = strings_of_length(alphabet, len);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// ---- equality family ---------------------------------------------------------------

namespace {

bool is_binary(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

bool over(std::string_view s, const std::vector<char>& alphabet) {
  return std::all_of(s.begin(), s.end(), [&](char c) {
    return std::find(alphabet.begin(), alphabet.end(), c) != alphabet.end();
  });
}

}  // namespace

PromiseFamily leq_family(IndexFunction m_fn) {
  PromiseFamily f;
  f.name = "leq";
  f.alphabet = {'0', '1', '#'};
  f.positive = [m_fn](std::uint64_t n, std::string_view w) {
    const auto m = m_fn(n);
    if (w.size() != 2 * m + 1 || w[m] != '#') return false;
    auto u = w.substr(0, m), v = w.substr(m + 1);
    return is_binary(u) && u == v;
  };
  f.negative = [m_fn, alpha = f.alphabet, pos = f.positive](std::uint64_t n, std::string_view w) {
    return w.size() == 2 * m_fn(n) + 1 && over(w, alpha) && !pos(n, w);
  };
  f.sampler = [m_fn, alpha = f.alphabet](std::uint64_t n, std::size_t max_len) {
    const auto len = 2 * m_fn(n) + 1;
    if (len > max_len) return std::vector<std::string>{};
    return strings_of_length(alpha, len);
  };
  return f;
}

MachineSpec build_leq_2dcta(std::uint64_t n) {
  MachineSpec shape;
  shape.name = "leq_2dcta";
  shape.mode = Mode::deterministic;
  shape.alphabet = {'0', '1', '#'};
  shape.counters = 1;
  MachineBuilder b(shape);

  const int push = b.state("push");
  const int walk = b.state("walk");
  const int back0 = b.state("back_0"), back1 = b.state("back_1"), backh = b.state("back_hash");
  const int seek0 = b.state("seek_0"), seek1 = b.state("seek_1"), seekh = b.state("seek_hash");
  const int check = b.state("check_len");
  const int fwd0 = b.state("fwd_0"), fwd1 = b.state("fwd_1");
  const int back2 = b.state("back_to_hash");
  const int home = b.state("home");
  const int acc = b.state("acc"), rej = b.state("rej");

  auto add = [&](int from, char read, Guard g, int to, int move, CounterOp op) {
    auto r = b.rule(from, read, to, move);
    r.guards[0] = g;
    r.ops[0] = op;
    b.add(std::move(r));
  };
  const std::string inner = "01#";

  // (1) one more round: CT1 := m+1.
  add(push, kLeftEnd, Guard::any, walk, 0, CounterOp::inc);
  // (2) walk to cell m+1, consuming CT1.
  for (char c : std::string(">01#")) add(walk, c, Guard::nonzero, walk, 1, CounterOp::dec);
  add(walk, kRightEnd, Guard::nonzero, rej, 0, CounterOp::noop);
  add(walk, '0', Guard::zero, back0, 0, CounterOp::noop);
  add(walk, '1', Guard::zero, back1, 0, CounterOp::noop);
  add(walk, '#', Guard::zero, backh, 0, CounterOp::noop);
  add(walk, kRightEnd, Guard::zero, rej, 0, CounterOp::noop);
  // (3) remember a, rebuild CT1 = m+1 on the way back to cell 0.
  // (4) then seek the separator.
  const int backs[] = {back0, back1, backh};
  const int seeks[] = {seek0, seek1, seekh};
  for (int a = 0; a < 3; ++a) {
    for (char c : inner) add(backs[a], c, Guard::any, backs[a], -1, CounterOp::inc);
    add(backs[a], kLeftEnd, Guard::any, seeks[a], 1, CounterOp::noop);
    add(seeks[a], '0', Guard::any, seeks[a], 1, CounterOp::noop);
    add(seeks[a], '1', Guard::any, seeks[a], 1, CounterOp::noop);
    add(seeks[a], kRightEnd, Guard::any, rej, 0, CounterOp::noop);
  }
  add(seekh, '#', Guard::any, check, 0, CounterOp::noop);
  add(seek0, '#', Guard::any, fwd0, 0, CounterOp::noop);
  add(seek1, '#', Guard::any, fwd1, 0, CounterOp::noop);
  // (4a) a = '#': |v| must equal m.
  for (char c : inner) add(check, c, Guard::nonzero, check, 1, CounterOp::dec);
  add(check, kRightEnd, Guard::nonzero, rej, 0, CounterOp::noop);
  add(check, kRightEnd, Guard::zero, acc, 0, CounterOp::noop);
  for (char c : inner) add(check, c, Guard::zero, rej, 0, CounterOp::noop);
  // (4b)/(5) a in {0,1}: compare with the symbol m+1 cells after '#'.
  const int fwds[] = {fwd0, fwd1};
  for (int a = 0; a < 2; ++a) {
    const char sym = a == 0 ? '0' : '1';
    for (char c : inner) add(fwds[a], c, Guard::nonzero, fwds[a], 1, CounterOp::dec);
    add(fwds[a], kRightEnd, Guard::nonzero, rej, 0, CounterOp::noop);
    for (char c : std::string("01#<"))
      add(fwds[a], c, Guard::zero, c == sym ? back2 : rej, 0, CounterOp::noop);
  }
  for (char c : std::string("01")) add(back2, c, Guard::any, back2, -1, CounterOp::inc);
  add(back2, '#', Guard::any, home, -1, CounterOp::noop);
  for (char c : inner) add(home, c, Guard::any, home, -1, CounterOp::noop);
  add(home, kLeftEnd, Guard::any, push, 0, CounterOp::noop);

  (void)n;  // the table is uniform in the index
  return b.finish(push, {acc}, {rej});
}

// ---- size incorporation ----------------------------------------------------------

IncorporatedProblem incorporate_size(const PromiseFamily& p, char separator) {
  if (std::find(p.alphabet.begin(), p.alphabet.end(), separator) != p.alphabet.end())
    throw std::invalid_argument(std::string("family alphabet already contains the separator '") + separator + "'");
  IncorporatedProblem k;
  k.separator = separator;
  k.alphabet = p.alphabet;
  k.alphabet.push_back(separator);
  const std::vector<char> sigma = p.alphabet;

  // Splits w = z # x at the first separator; false when there is none.
  auto split = [separator](std::string_view w, std::string_view& z, std::string_view& x) {
    auto at = w.find(separator);
    if (at == std::string_view::npos) return false;
    z = w.substr(0, at);
    x = w.substr(at + 1);
    return true;
  };
  auto all_ones = [](std::string_view z) { return std::all_of(z.begin(), z.end(), [](char c) { return c == '1'; }); };

  k.positive = [p, split, all_ones, sigma](std::uint64_t n, std::string_view w) {
    std::string_view z, x;
    if (!split(w, z, x) || z.size() != n || !all_ones(z) || !over(x, sigma)) return false;
    return p.positive(n, x);
  };
  k.negative = [p, split, all_ones, sigma, separator](std::uint64_t n, std::string_view w) {
    std::string_view z, x;
    if (split(w, z, x) && over(z, sigma) && over(x, sigma) && z.size() == n) {
      if (!all_ones(z)) return true;      // z # x with z != 1^n
      return !p.positive(n, x);           // 1^n # x with x outside P_n^+
    }
    if (w.size() == n && over(w, sigma)) return true;  // Σ^n
    if (w.size() == n) {                                // more than one separator
      auto seps = std::count(w.begin(), w.end(), separator);
      bool ok = std::all_of(w.begin(), w.end(), [&](char c) {
        return c == separator || std::find(sigma.begin(), sigma.end(), c) != sigma.end();
      });
      return ok && seps >= 2;
    }
    return false;
  };
  k.member = [pos = k.positive, split, all_ones](std::string_view w) {
    std::string_view z, x;
    if (!split(w, z, x) || !all_ones(z)) return false;
    return pos(z.size(), w);
  };
  k.size = [p, split, all_ones, sigma](std::string_view w) -> std::uint64_t {
    std::string_view z, x;
    if (split(w, z, x) && all_ones(z) && over(x, sigma) && p.promised(z.size(), x)) return z.size();
    return w.size();
  };
  return k;
}

PromiseFamily induced_family(Membership language, SizeParameter m, std::vector<char> alphabet, std::string name) {
  PromiseFamily f;
  f.name = std::move(name);
  f.alphabet = alphabet;
  f.positive = [language, m, alphabet](std::uint64_t n, std::string_view w) {
    return over(w, alphabet) && m(w) == n && language(w);
  };
  f.negative = [language, m, alphabet](std::uint64_t n, std::string_view w) {
    return over(w, alphabet) && m(w) == n && !language(w);
  };
  f.sampler = [m, alphabet](std::uint64_t n, std::size_t max_len) {
    std::vector<std::string> out;
    for (auto& w : strings_up_to(alphabet, max_len))
      if (m(w) == n) out.push_back(std::move(w));
    return out;
  };
  return f;
}

bool check_ceiling(const PromiseFamily& p, const IndexFunction& ceiling, std::uint64_t n_max, std::size_t ell_max) {
  for (std::uint64_t n = 0; n <= n_max; ++n)
    for (const auto& w : p.sampler(n, ell_max))
      if (w.size() > ceiling(n)) return false;
  return true;
}

}  // namespace counterlab

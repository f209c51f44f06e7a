// Promise-problem families: the equality family and its one-counter two-way
// solver, size incorporation and induced families, polynomial ceilings.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "counterlab/machine.hpp"

namespace counterlab {

using SizeParameter = std::function<std::uint64_t(std::string_view)>;
using IndexFunction = std::function<std::uint64_t(std::uint64_t)>;
using Membership = std::function<bool(std::string_view)>;

/// Length as the size parameter.
std::uint64_t length_size(std::string_view w);

/// All strings over `alphabet` of length <= max_len, length-lexicographic.
std::vector<std::string> strings_up_to(const std::vector<char>& alphabet, std::size_t max_len);
std::vector<std::string> strings_of_length(const std::vector<char>& alphabet, std::size_t len);

struct PromiseFamily {
  std::string name;
  std::vector<char> alphabet;
  std::function<bool(std::uint64_t, std::string_view)> positive;
  std::function<bool(std::uint64_t, std::string_view)> negative;
  /// Promised strings of index n with length <= max_len, length-lexicographic.
  std::function<std::vector<std::string>(std::uint64_t, std::size_t)> sampler;

  bool promised(std::uint64_t n, std::string_view w) const { return positive(n, w) || negative(n, w); }
};

/// L_n^+ = { w#w : |w| = m(n) } over {0,1}; L_n^- = the other strings of
/// length 2m(n)+1 over {0,1,#}.
PromiseFamily leq_family(IndexFunction m_fn);

/// Deterministic one-counter two-way machine deciding the equality family.
/// Its transition table does not depend on n.
MachineSpec build_leq_2dcta(std::uint64_t n);

struct IncorporatedProblem {
  std::vector<char> alphabet;  // source alphabet plus the separator
  char separator = '#';
  Membership member;           // K: 1^n # x with x in P_n^+
  SizeParameter size;          // n on 1^n # x with x promised, |w| otherwise
  std::function<bool(std::uint64_t, std::string_view)> positive;  // K_n^+
  std::function<bool(std::uint64_t, std::string_view)> negative;  // K_n^-
};

/// Size-incorporated family; throws std::invalid_argument when the family's
/// alphabet contains the separator.
IncorporatedProblem incorporate_size(const PromiseFamily& p, char separator = '#');

/// P_n^+ = L ∩ Σ_(n), P_n^- = complement(L) ∩ Σ_(n), Σ_(n) = { x : m(x) = n }.
PromiseFamily induced_family(Membership language, SizeParameter m, std::vector<char> alphabet,
                             std::string name = "induced");

/// True iff every sampled promised string of index n <= n_max (length <= ell_max)
/// has length <= p(n).
bool check_ceiling(const PromiseFamily& p, const IndexFunction& ceiling, std::uint64_t n_max,
                   std::size_t ell_max);

}  // namespace counterlab

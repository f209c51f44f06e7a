#include <cmath>

#include "counterlab/executor.hpp"
#include "counterlab/families.hpp"
#include "counterlab/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace counterlab;

namespace {

std::uint64_t ident(std::uint64_t n) { return n; }

}  // namespace

TEST_CASE("equality solver examples") {
  const auto m = build_leq_2dcta(2);
  CHECK(testsupport::coherent_decide(m, "01#01", 10000) == Outcome::accept);
  CHECK(testsupport::coherent_decide(m, "01#00", 10000) == Outcome::reject);
  CHECK(testsupport::coherent_decide(m, "01#10", 10000) == Outcome::reject);
  CHECK(testsupport::coherent_decide(m, "0#0", 10000) == Outcome::accept);
  CHECK(build_leq_2dcta(1).transitions == build_leq_2dcta(3).transitions);
}

TEST_CASE("equality solver classifies the promise set") {
  const auto fam = leq_family(ident);
  for (std::uint64_t n = 0; n <= 3; ++n) {
    const auto m = build_leq_2dcta(n);
    std::size_t positives = 0;
    const auto strings = fam.sampler(n, 2 * n + 1);
    CHECK(strings.size() == static_cast<std::size_t>(std::pow(3, 2 * n + 1)));
    for (const auto& w : strings) {
      REQUIRE(fam.promised(n, w));
      const bool pos = fam.positive(n, w);
      positives += pos;
      auto v = decide(m, w, RunBudget{100000, 2'000'000});
      CHECK(v.outcome == (pos ? Outcome::accept : Outcome::reject));
    }
    CHECK(positives == (std::size_t{1} << n));
  }
}

TEST_CASE("size incorporation") {
  const auto bin = induced_family([](std::string_view w) { return !w.empty() && w.back() == '1'; },
                                  [](std::string_view w) { return w.size(); }, {'0', '1'}, "ends1");
  const auto k = incorporate_size(bin);
  CHECK(k.positive(2, "11#01"));
  CHECK_FALSE(k.positive(2, "11#00"));
  CHECK(k.negative(2, "11#00"));
  CHECK(k.negative(2, "10#01"));
  CHECK(k.negative(2, "01"));
  CHECK(k.negative(3, "##0"));
  CHECK_FALSE(k.negative(2, "11#01"));
  CHECK(k.member("11#01"));
  CHECK(k.size("11#01") == 2);
  CHECK(k.size("0#") == 2);
  CHECK_THROWS_AS(incorporate_size(leq_family(ident)), std::invalid_argument);
}

TEST_CASE("ceiling") {
  const auto fam = leq_family(ident);
  CHECK(check_ceiling(fam, [](std::uint64_t n) { return 2 * n + 1; }, 3, 7));
  CHECK_FALSE(check_ceiling(fam, [](std::uint64_t n) { return n; }, 3, 7));
}

TEST_CASE("unambiguity audit") {
  const auto fam = leq_family(ident);
  OracleBudget b;
  b.cap = 10000;
  auto rep = check_unambiguous(build_leq_2dcta(1), fam, 1, 3, b);
  CHECK(rep.unambiguous);
  CHECK(rep.complete);
  auto empty = check_unambiguous(build_leq_2dcta(1), fam, 1, 2, b);
  CHECK(empty.unambiguous);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "dat/core.hpp"
#include "dat/io.hpp"
#include "dat/rng.hpp"
#include "helpers.hpp"

using namespace dat;
using dat::testing::count_grid;
using dat::testing::demand;
using dat::testing::rat_grid;

TEST_CASE("rationals are canonical and exact") {
  CHECK(Rational(6, 8) == Rational(3, 4));
  CHECK(Rational(6, 8).num() == 3);
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(3, -6).den() == 2);
  CHECK(Rational(3, -6).num() == -1);
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 10) * Rational(10) == Rational(1));
  CHECK(Rational(1) / Rational(3) == Rational(1, 3));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(0).is_zero());
  CHECK(Rational(7, 1).is_integer());
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("9/10") == Rational(9, 10));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("3/-4") == Rational(-3, 4));
  CHECK(Rational::parse("42") == Rational(42));
  CHECK(Rational::parse("0.16") == Rational(4, 25));
  CHECK(Rational::parse("2.5") == Rational(5, 2));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(Rational::parse(" 1/2 ") == Rational(1, 2));
  CHECK(Rational::parse("1/2").str() == "1/2");
  CHECK(Rational::parse("4").str() == "4");
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational::parse("a/b"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), ParseError);
}

TEST_CASE("floor, ceil, frac") {
  CHECK(Rational(7, 2).floor() == Rational(3));
  CHECK(Rational(7, 2).ceil() == Rational(4));
  CHECK(Rational(7, 2).frac() == Rational(1, 2));
  CHECK(Rational(-7, 2).floor() == Rational(-4));
  CHECK(Rational(-7, 2).ceil() == Rational(-3));
  CHECK(Rational(-7, 2).frac() == Rational(1, 2));
  CHECK(Rational(5).floor() == Rational(5));
  CHECK(Rational(5).frac().is_zero());
}

TEST_CASE("demand matrix validation") {
  CHECK_NOTHROW(demand({{"1/2", "1/2"}, {"1/2", "1/2"}}));

  RatGrid identity(3);
  for (int i = 0; i < 3; ++i) identity(i, i) = Rational(1);
  CHECK_NOTHROW(validate_demand_matrix(identity));

  try {
    validate_demand_matrix(rat_grid({{"3/4", "1/2"}, {"1/2", "1/2"}}));
    FAIL("expected RowSumMismatch");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == ValidationError::Kind::RowSumMismatch);
    CHECK(e.i() == 0);
    CHECK(e.actual() == Rational(5, 4));
  }

  try {
    validate_demand_matrix(rat_grid({{"1/2", "1/2"}, {"1", "0"}}));
    FAIL("expected ColSumMismatch");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == ValidationError::Kind::ColSumMismatch);
    CHECK(e.j() == 0);
    CHECK(e.actual() == Rational(3, 2));
  }

  try {
    validate_demand_matrix(rat_grid({{"3/2", "-1/2"}, {"-1/2", "3/2"}}));
    FAIL("expected NegativeEntry");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == ValidationError::Kind::NegativeEntry);
    CHECK(e.actual() == Rational(-1, 2));
  }
}

TEST_CASE("named matrix families") {
  const DemandMatrix m2 = family_matrix({MatrixFamily::M2, 0, Rational(0)});
  CHECK(m2.entries == rat_grid({{"9/10", "1/10"}, {"1/10", "9/10"}}));

  const DemandMatrix fig2 = family_matrix({MatrixFamily::FigSecondStage, 0, Rational(0)});
  CHECK(fig2.entries == rat_grid({{"3/8", "1/4", "3/8"}, {"3/8", "3/8", "1/4"}, {"1/4", "3/8", "3/8"}}));

  const DemandMatrix odd3 = family_matrix({MatrixFamily::WeakDirectUpper, 3, Rational(0)});
  CHECK(odd3.entries == rat_grid({{"1/5", "3/10", "1/2"}, {"3/10", "2/5", "3/10"}, {"1/2", "3/10", "1/5"}}));

  // At n = 2 the alternating family collapses onto the all-halves matrix.
  const DemandMatrix even2 = family_matrix({MatrixFamily::WeakDirectUpper, 2, Rational(0)});
  CHECK(even2.entries == family_matrix({MatrixFamily::M1, 0, Rational(0)}).entries);

  const DemandMatrix strong = family_matrix({MatrixFamily::StrongUpper, 0, Rational(9, 10)});
  CHECK(strong.entries == rat_grid({{"14/15", "1/15"}, {"1/15", "14/15"}}));

  const DemandMatrix flow = family_matrix({MatrixFamily::FigFlowExample, 0, Rational(0)});
  CHECK(flow.entries(0, 0) == Rational::parse("0.16"));
  CHECK(flow.entries(1, 1) == Rational::parse("0.84"));

  CHECK_THROWS_AS(family_matrix({MatrixFamily::StrongUpper, 0, Rational(1, 2)}), ParamOutOfRange);
  CHECK_THROWS_AS(family_matrix({MatrixFamily::DirectUpper, 2, Rational(1, 2)}), ParamOutOfRange);
  CHECK_THROWS_AS(family_matrix({MatrixFamily::DirectUpper, 1, Rational(9, 10)}), ParamOutOfRange);

  // Parameterized families stay doubly stochastic at larger sizes too.
  CHECK_NOTHROW(family_matrix({MatrixFamily::DirectUpper, 5, Rational(3, 5)}));
  CHECK_NOTHROW(family_matrix({MatrixFamily::WeakDirectUpper, 6, Rational(0)}));
  CHECK_NOTHROW(family_matrix({MatrixFamily::WeakDirectUpper, 1, Rational(0)}));
}

TEST_CASE("random doubly stochastic matrices") {
  const DemandMatrix one = random_doubly_stochastic(1, 5, 0);
  CHECK(one.entries(0, 0) == Rational(1));

  CHECK_NOTHROW(random_doubly_stochastic(3, 4, 42));

  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    const DemandMatrix perm = random_doubly_stochastic(2, 1, seed);
    const bool is_id = perm.entries(0, 0) == Rational(1);
    const bool is_swap = perm.entries(0, 1) == Rational(1);
    CHECK((is_id || is_swap));
  }

  const DemandMatrix a = random_doubly_stochastic(4, 6, 99);
  const DemandMatrix b = random_doubly_stochastic(4, 6, 99);
  CHECK(a.entries == b.entries);
  const DemandMatrix c = random_doubly_stochastic(4, 6, 100);
  CHECK(a.entries != c.entries);
}

namespace {

// Independent margin-count oracle: number of n x n non-negative integer
// matrices with all row sums r and the given column remainders, memoized on
// the sorted remainder profile (column order does not affect the count).
long long count_tables(std::vector<std::int64_t> col_rem, int rows_left, std::int64_t r,
                       std::map<std::pair<std::vector<std::int64_t>, int>, long long>& memo) {
  const int n = static_cast<int>(col_rem.size());
  if (rows_left == 0) {
    for (std::int64_t c : col_rem) {
      if (c != 0) return 0;
    }
    return 1;
  }
  std::vector<std::int64_t> key = col_rem;
  std::sort(key.begin(), key.end());
  if (auto it = memo.find({key, rows_left}); it != memo.end()) return it->second;

  long long total = 0;
  std::function<void(int, std::int64_t)> place = [&](int j, std::int64_t rem) {
    if (j == n - 1) {
      if (rem <= col_rem[j]) {
        col_rem[j] -= rem;
        total += count_tables(col_rem, rows_left - 1, r, memo);
        col_rem[j] += rem;
      }
      return;
    }
    for (std::int64_t v = 0; v <= std::min(rem, col_rem[j]); ++v) {
      col_rem[j] -= v;
      place(j + 1, rem - v);
      col_rem[j] += v;
    }
  };
  place(0, r);
  memo[{key, rows_left}] = total;
  return total;
}

long long count_tables(int n, std::int64_t r) {
  std::map<std::pair<std::vector<std::int64_t>, int>, long long> memo;
  return count_tables(std::vector<std::int64_t>(n, r), n, r, memo);
}

}  // namespace

TEST_CASE("topology enumeration") {
  const auto four = enumerate_regular_topologies(2, 3);
  REQUIRE(four.size() == 4);
  CHECK(four[0].counts == count_grid({{0, 3}, {3, 0}}));
  CHECK(four[1].counts == count_grid({{1, 2}, {2, 1}}));
  CHECK(four[2].counts == count_grid({{2, 1}, {1, 2}}));
  CHECK(four[3].counts == count_grid({{3, 0}, {0, 3}}));

  const auto single = enumerate_regular_topologies(1, 5);
  REQUIRE(single.size() == 1);
  CHECK(single[0].counts(0, 0) == 5);

  long long enumerated = 0;
  std::set<std::vector<std::int64_t>> seen;
  for_each_regular_topology(3, 5, [&](const Topology& t) {
    ++enumerated;
    seen.insert(t.counts.cells());
    CHECK_NOTHROW(validate_topology(t.n, t.degree, t.counts));
    return true;
  });
  CHECK(enumerated == count_tables(3, 5));
  CHECK(enumerated == 231);
  CHECK(static_cast<long long>(seen.size()) == enumerated);  // pairwise distinct

  CHECK(count_tables(2, 3) == 4);

  // early stop
  int visits = 0;
  const bool completed = for_each_regular_topology(2, 3, [&](const Topology&) { return ++visits < 2; });
  CHECK(visits == 2);
  CHECK_FALSE(completed);
}

TEST_CASE("matrix json and csv round-trips") {
  const DemandMatrix m = random_doubly_stochastic(3, 4, 7);
  CHECK(matrix_from_json(matrix_to_json(m)).entries == m.entries);
  CHECK(matrix_from_csv(matrix_to_csv(m)).entries == m.entries);

  const DemandMatrix decimal = matrix_from_csv("0.16,0.84\n0.84,0.16\n");
  CHECK(decimal.entries(0, 0) == Rational(4, 25));

  const Json j = Json::parse(R"({"n": 2, "entries": [["1/2","1/2"],["1/2","1/2"]]})");
  CHECK(matrix_from_json(j).entries(1, 1) == Rational(1, 2));
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"n": 2, "entries": [["1/2"]]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_csv("1/2,1/2\n1,0\n"), ValidationError);
}

TEST_CASE("topology and plan serialization") {
  const Topology g = dat::testing::topo(3, {{1, 2}, {2, 1}});
  const Topology back = topology_from_json(topology_to_json(g));
  CHECK(back.counts == g.counts);
  CHECK(back.degree == 3);

  FlowPlan plan;
  plan.routes.push_back({{{0, 1}, {1, 0}}, Rational(1, 9)});
  const FlowPlan loaded = plan_from_json(plan_to_json(plan));
  REQUIRE(loaded.routes.size() == 1);
  CHECK(loaded.routes[0].path == plan.routes[0].path);
  CHECK(loaded.routes[0].amount == Rational(1, 9));
}

TEST_CASE("seed derivation and exact bernoulli") {
  CHECK(derive_seed(0, 0) != derive_seed(0, 1));
  CHECK(derive_seed(0, 5) == derive_seed(0, 5));

  SplitMix64 rng(123);
  int hits = 0;
  const int trials = 40000;
  for (int i = 0; i < trials; ++i) {
    if (bernoulli(rng, Rational(1, 4))) ++hits;
  }
  const double freq = static_cast<double>(hits) / trials;
  CHECK(freq > 0.23);
  CHECK(freq < 0.27);

  SplitMix64 rng2(9);
  CHECK_FALSE(bernoulli(rng2, Rational(0)));
  CHECK(bernoulli(rng2, Rational(1)));
}

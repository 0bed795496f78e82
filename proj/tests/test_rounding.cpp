#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dat/rng.hpp"
#include "dat/rounding.hpp"
#include "helpers.hpp"

using namespace dat;
using dat::testing::count_grid;
using dat::testing::rat_grid;

namespace {

const RatGrid kFigFractional = rat_grid({{"3/4", "1/2", "3/4"}, {"3/4", "3/4", "1/2"}, {"1/2", "3/4", "3/4"}});

void check_sums_preserved(const FractionalMatrix& in, const CountGrid& bits) {
  const int n = in.n;
  for (int i = 0; i < n; ++i) {
    Rational row_in, col_in;
    std::int64_t row_out = 0, col_out = 0;
    for (int j = 0; j < n; ++j) {
      row_in += in.entries(i, j);
      col_in += in.entries(j, i);
      row_out += bits(i, j);
      col_out += bits(j, i);
    }
    CHECK(row_in == Rational(row_out));
    CHECK(col_in == Rational(col_out));
  }
}

Rational overlap_bound_gap(const FractionalMatrix& in, const CountGrid& bits) {
  Rational overlap, mass;
  for (int i = 0; i < in.n; ++i) {
    for (int j = 0; j < in.n; ++j) {
      mass += in.entries(i, j);
      if (bits(i, j) == 1) overlap += in.entries(i, j);
    }
  }
  return overlap - mass * mass / (Rational(in.n) * Rational(in.n));
}

// Random instance with entries in [0,1] and integer margins: the fractional
// part of an integer multiple of a random doubly stochastic matrix.
FractionalMatrix random_fractional(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int scale = 2 + static_cast<int>(rng.below(6));
  const DemandMatrix m = random_doubly_stochastic(n, 3 + static_cast<int>(rng.below(3)), rng.next());
  RatGrid g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = (Rational(scale) * m.entries(i, j)).frac();
  }
  return validate_fractional_matrix(g);
}

}  // namespace

TEST_CASE("fractional matrix validation") {
  CHECK_NOTHROW(validate_fractional_matrix(kFigFractional));
  CHECK_THROWS_AS(validate_fractional_matrix(rat_grid({{"3/2", "0"}, {"0", "3/2"}})), InvalidInput);
  CHECK_THROWS_AS(validate_fractional_matrix(rat_grid({{"1/2", "1/4"}, {"1/4", "1/2"}})), InvalidInput);
}

TEST_CASE("cycle rounding leaves integral inputs alone") {
  const RatGrid integral = rat_grid({{"1", "0"}, {"0", "1"}});
  const RoundingSample s = cycle_round(validate_fractional_matrix(integral));
  CHECK(s.bits == count_grid({{1, 0}, {0, 1}}));
}

TEST_CASE("cycle rounding on the all-halves matrix") {
  const FractionalMatrix in = validate_fractional_matrix(rat_grid({{"1/2", "1/2"}, {"1/2", "1/2"}}));
  const RoundingSample s = cycle_round(in);
  const bool id = s.bits == count_grid({{1, 0}, {0, 1}});
  const bool swap = s.bits == count_grid({{0, 1}, {1, 0}});
  CHECK((id || swap));
  check_sums_preserved(in, s.bits);
  CHECK(overlap_bound_gap(in, s.bits) == Rational(0));  // bound met with equality: overlap 1 = X^2/n^2

  // deterministic
  CHECK(cycle_round(in).bits == s.bits);
}

TEST_CASE("cycle rounding on the three-node example matrix") {
  const FractionalMatrix in = validate_fractional_matrix(kFigFractional);
  const RoundingSample s = cycle_round(in);
  check_sums_preserved(in, s.bits);
  CHECK(overlap_bound_gap(in, s.bits) >= Rational(0));  // X = 6, bound X^2/n^2 = 4
}

TEST_CASE("cycle rounding property test over seeded inputs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const FractionalMatrix in = random_fractional(n, seed);
    const RoundingSample s = cycle_round(in);
    check_sums_preserved(in, s.bits);
    CHECK(overlap_bound_gap(in, s.bits) >= Rational(0));
  }
}

TEST_CASE("dependent rounding keeps integral inputs and sums") {
  const RatGrid integral = rat_grid({{"0", "1"}, {"1", "0"}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(dependent_round(validate_fractional_matrix(integral), seed).bits == count_grid({{0, 1}, {1, 0}}));
  }

  const FractionalMatrix fig = validate_fractional_matrix(kFigFractional);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    check_sums_preserved(fig, dependent_round(fig, seed).bits);
  }
}

TEST_CASE("dependent rounding is deterministic per seed") {
  const FractionalMatrix fig = validate_fractional_matrix(kFigFractional);
  CHECK(dependent_round(fig, 1234).bits == dependent_round(fig, 1234).bits);
}

TEST_CASE("dependent rounding marginals within 99.9% binomial intervals") {
  const FractionalMatrix half = validate_fractional_matrix(rat_grid({{"1/2", "1/2"}, {"1/2", "1/2"}}));
  const int samples = 10000;
  int ones = 0;
  for (int s = 0; s < samples; ++s) {
    const RoundingSample out = dependent_round(half, static_cast<std::uint64_t>(s));
    ones += static_cast<int>(out.bits(0, 0));
    const std::int64_t row0 = out.bits(0, 0) + out.bits(0, 1);
    const std::int64_t col0 = out.bits(0, 0) + out.bits(1, 0);
    REQUIRE(row0 == 1);
    REQUIRE(col0 == 1);
  }
  // z = 3.2905 (99.9% two-sided), half-width 3.2905 * sqrt(.25/10^4) < 0.0165
  const double freq = static_cast<double>(ones) / samples;
  CHECK(std::abs(freq - 0.5) < 0.0165);
}

TEST_CASE("dependent rounding marginals on an uneven instance") {
  const FractionalMatrix in = validate_fractional_matrix(kFigFractional);
  const int samples = 10000;
  CountGrid ones(3, 0);
  for (int s = 0; s < samples; ++s) {
    const RoundingSample out = dependent_round(in, static_cast<std::uint64_t>(s) * 7919 + 13);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) ones(i, j) += out.bits(i, j);
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double p = in.entries(i, j).to_double();
      const double half_width = 3.2905 * std::sqrt(p * (1 - p) / samples);
      const double freq = static_cast<double>(ones(i, j)) / samples;
      CHECK(std::abs(freq - p) < half_width);
    }
  }
}

TEST_CASE("dependent rounding negative correlation spot check") {
  // P(all bits in S are 0) <= prod (1 - alpha) + slack, for subsets S of a
  // fixed row and of a fixed column.
  const FractionalMatrix in = validate_fractional_matrix(kFigFractional);
  const int samples = 10000;
  const std::vector<std::vector<int>> subsets = {{0, 1}, {1, 2}, {0, 2}, {0, 1, 2}};
  for (int line = 0; line < 3; ++line) {
    for (bool rows : {true, false}) {
      for (const auto& subset : subsets) {
        int all_zero = 0;
        for (int s = 0; s < samples; ++s) {
          const RoundingSample out = dependent_round(in, static_cast<std::uint64_t>(s) * 31 + line);
          bool zero = true;
          for (int k : subset) zero = zero && (rows ? out.bits(line, k) : out.bits(k, line)) == 0;
          all_zero += zero ? 1 : 0;
        }
        Rational bound(1);
        for (int k : subset) bound *= Rational(1) - (rows ? in.entries(line, k) : in.entries(k, line));
        const double slack = 3.2905 * std::sqrt(0.25 / samples) + 1e-9;
        CHECK(static_cast<double>(all_zero) / samples <= bound.to_double() + slack);
      }
    }
  }
}

TEST_CASE("figure rounding appears among dependent rounding outcomes") {
  const FractionalMatrix in = validate_fractional_matrix(kFigFractional);
  const CountGrid figure = count_grid({{1, 0, 1}, {1, 1, 0}, {0, 1, 1}});
  bool found = false;
  for (std::uint64_t seed = 0; seed < 10000 && !found; ++seed) {
    found = dependent_round(in, seed).bits == figure;
  }
  CHECK(found);
}

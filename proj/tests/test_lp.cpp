#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dat/lp.hpp"

using namespace dat;

namespace {

LinearProgram make_lp(int vars, std::vector<Rational> objective) {
  LinearProgram lp;
  lp.num_vars = vars;
  lp.objective = std::move(objective);
  return lp;
}

void add_row(LinearProgram& lp, std::vector<Rational> coeffs, Relation rel, Rational bound) {
  lp.constraints.push_back({std::move(coeffs), rel, std::move(bound)});
}

}  // namespace

TEST_CASE("single bounded variable") {
  LinearProgram lp = make_lp(1, {Rational(1)});
  add_row(lp, {Rational(1)}, Relation::LessEq, Rational(3, 7));
  const LpSolution sol = solve_lp(lp);
  CHECK(sol.optimum == Rational(3, 7));
  CHECK(sol.assignment[0] == Rational(3, 7));
}

TEST_CASE("two variables with a coupling constraint") {
  LinearProgram lp = make_lp(2, {Rational(1), Rational(1)});
  add_row(lp, {Rational(1), Rational(0)}, Relation::LessEq, Rational(1));
  add_row(lp, {Rational(0), Rational(1)}, Relation::LessEq, Rational(1));
  add_row(lp, {Rational(1), Rational(1)}, Relation::LessEq, Rational(3, 2));
  CHECK(solve_lp(lp).optimum == Rational(3, 2));
}

TEST_CASE("equality constraints") {
  LinearProgram lp = make_lp(2, {Rational(1), Rational(0)});
  add_row(lp, {Rational(1), Rational(1)}, Relation::Eq, Rational(2, 3));
  const LpSolution sol = solve_lp(lp);
  CHECK(sol.optimum == Rational(2, 3));
  CHECK(sol.assignment[1] == Rational(0));
}

TEST_CASE("negative bounds are normalized") {
  // maximize -x subject to -x <= -2  (i.e. x >= 2); optimum at x = 2.
  LinearProgram lp = make_lp(1, {Rational(-1)});
  add_row(lp, {Rational(-1)}, Relation::LessEq, Rational(-2));
  CHECK(solve_lp(lp).optimum == Rational(-2));
}

TEST_CASE("infeasible and unbounded are reported") {
  LinearProgram infeasible = make_lp(1, {Rational(1)});
  add_row(infeasible, {Rational(1)}, Relation::Eq, Rational(-5));
  CHECK_THROWS_AS(solve_lp(infeasible), LpInfeasible);

  LinearProgram contradictory = make_lp(1, {Rational(1)});
  add_row(contradictory, {Rational(1)}, Relation::LessEq, Rational(1));
  add_row(contradictory, {Rational(-1)}, Relation::LessEq, Rational(-2));
  CHECK_THROWS_AS(solve_lp(contradictory), LpInfeasible);

  LinearProgram unbounded = make_lp(2, {Rational(1), Rational(0)});
  add_row(unbounded, {Rational(0), Rational(1)}, Relation::LessEq, Rational(1));
  CHECK_THROWS_AS(solve_lp(unbounded), LpUnbounded);
}

TEST_CASE("Beale's cycling example terminates under Bland's rule") {
  LinearProgram lp = make_lp(4, {Rational(3, 4), Rational(-150), Rational(1, 50), Rational(-6)});
  add_row(lp, {Rational(1, 4), Rational(-60), Rational(-1, 25), Rational(9)}, Relation::LessEq, Rational(0));
  add_row(lp, {Rational(1, 2), Rational(-90), Rational(-1, 50), Rational(3)}, Relation::LessEq, Rational(0));
  add_row(lp, {Rational(0), Rational(0), Rational(1), Rational(0)}, Relation::LessEq, Rational(1));
  const LpSolution sol = solve_lp(lp);
  CHECK(sol.optimum == Rational(1, 20));
  CHECK(sol.assignment[0] == Rational(1, 25));
  CHECK(sol.assignment[2] == Rational(1));
}

TEST_CASE("degenerate equalities with redundant rows") {
  LinearProgram lp = make_lp(2, {Rational(1), Rational(1)});
  add_row(lp, {Rational(1), Rational(1)}, Relation::Eq, Rational(1));
  add_row(lp, {Rational(2), Rational(2)}, Relation::Eq, Rational(2));  // redundant
  CHECK(solve_lp(lp).optimum == Rational(1));
}

TEST_CASE("exactness with awkward denominators") {
  LinearProgram lp = make_lp(2, {Rational(1, 3), Rational(1, 7)});
  add_row(lp, {Rational(2, 5), Rational(1, 11)}, Relation::LessEq, Rational(13, 17));
  add_row(lp, {Rational(1, 13), Rational(3, 19)}, Relation::LessEq, Rational(5, 23));
  const LpSolution sol = solve_lp(lp);
  // Optimum sits at the intersection of the two constraint lines; verify by
  // substituting the assignment back exactly.
  Rational lhs1 = Rational(2, 5) * sol.assignment[0] + Rational(1, 11) * sol.assignment[1];
  Rational lhs2 = Rational(1, 13) * sol.assignment[0] + Rational(3, 19) * sol.assignment[1];
  CHECK(lhs1 <= Rational(13, 17));
  CHECK(lhs2 <= Rational(5, 23));
  CHECK(sol.optimum == Rational(1, 3) * sol.assignment[0] + Rational(1, 7) * sol.assignment[1]);
}

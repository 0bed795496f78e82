#pragma once

#include <vector>

#include "dat/errors.hpp"
#include "dat/rational.hpp"

namespace dat {

enum class Relation { LessEq, Eq };

struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::LessEq;
  Rational bound;
};

/// maximize objective . x  subject to the constraints and x >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;
};

struct LpSolution {
  Rational optimum;
  std::vector<Rational> assignment;
};

/// Exact two-phase simplex on a dense rational tableau with Bland's
/// anti-cycling pivot rule. Throws LpInfeasible / LpUnbounded, and
/// LpIterationLimit if the (generous) pivot cap is ever hit.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace dat

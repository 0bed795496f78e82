#include "dat/lp.hpp"

#include <algorithm>

namespace dat {

namespace {

constexpr long kMaxPivots = 200000;

// Dense tableau: one row per constraint plus an objective row holding the
// reduced costs. Column layout: structural vars, slacks, artificials, rhs.
class Tableau {
 public:
  Tableau(const LinearProgram& lp) {
    const int m = static_cast<int>(lp.constraints.size());
    num_structural_ = lp.num_vars;
    int num_slack = 0, num_art = 0;
    for (const auto& c : lp.constraints) {
      if (c.rel == Relation::LessEq) {
        ++num_slack;
        if (c.bound.sign() < 0) ++num_art;  // becomes >= after sign flip
      } else {
        ++num_art;
      }
    }
    cols_ = num_structural_ + num_slack + num_art;
    rows_.assign(m, std::vector<Rational>(cols_ + 1));
    basis_.assign(m, -1);
    art_start_ = num_structural_ + num_slack;

    int slack_at = num_structural_;
    int art_at = art_start_;
    for (int r = 0; r < m; ++r) {
      const auto& c = lp.constraints[r];
      if (static_cast<int>(c.coeffs.size()) != lp.num_vars) {
        throw DimensionMismatch("constraint coefficient count does not match variable count");
      }
      const bool flip = c.bound.sign() < 0;
      for (int j = 0; j < lp.num_vars; ++j) rows_[r][j] = flip ? -c.coeffs[j] : c.coeffs[j];
      rows_[r][cols_] = flip ? -c.bound : c.bound;
      if (c.rel == Relation::LessEq) {
        rows_[r][slack_at] = flip ? Rational(-1) : Rational(1);
        if (flip) {
          rows_[r][art_at] = Rational(1);
          basis_[r] = art_at++;
        } else {
          basis_[r] = slack_at;
        }
        ++slack_at;
      } else {
        rows_[r][art_at] = Rational(1);
        basis_[r] = art_at++;
      }
    }
  }

  Rational phase1() {
    // Maximize -(sum of artificials); reduced costs start as the sum of the
    // rows whose basic variable is artificial.
    std::vector<Rational> z(cols_ + 1);
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
      if (basis_[r] >= art_start_) {
        for (int j = 0; j <= cols_; ++j) z[j] += rows_[r][j];
      }
    }
    for (int j = art_start_; j < cols_; ++j) z[j] = Rational(0);
    run(z, /*allow_artificial_entering=*/false);
    return z[cols_];  // remaining infeasibility
  }

  void drop_artificials() {
    // Pivot artificials out of the basis where possible; rows that cannot be
    // pivoted are redundant and removed.
    for (int r = static_cast<int>(rows_.size()) - 1; r >= 0; --r) {
      if (basis_[r] < art_start_) continue;
      int enter = -1;
      for (int j = 0; j < art_start_; ++j) {
        if (!rows_[r][j].is_zero()) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) {
        pivot(r, enter);
      } else {
        rows_.erase(rows_.begin() + r);
        basis_.erase(basis_.begin() + r);
      }
    }
  }

  LpSolution phase2(const LinearProgram& lp) {
    std::vector<Rational> z(cols_ + 1);
    for (int j = 0; j < num_structural_; ++j) z[j] = lp.objective[j];
    // Reduce against the current basis: z_j <- c_j - sum_r c_B(r) T[r][j].
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
      const int b = basis_[r];
      const Rational cb = b < num_structural_ ? lp.objective[b] : Rational(0);
      if (cb.is_zero()) continue;
      for (int j = 0; j <= cols_; ++j) {
        if (!rows_[r][j].is_zero()) z[j] -= cb * rows_[r][j];
      }
      z[b] = Rational(0);
    }
    run(z, /*allow_artificial_entering=*/false);

    LpSolution sol;
    sol.assignment.assign(num_structural_, Rational(0));
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
      if (basis_[r] < num_structural_) sol.assignment[basis_[r]] = rows_[r][cols_];
    }
    for (int j = 0; j < num_structural_; ++j) sol.optimum += lp.objective[j] * sol.assignment[j];
    return sol;
  }

 private:
  void run(std::vector<Rational>& z, bool allow_artificial_entering) {
    const int m = static_cast<int>(rows_.size());
    const int enter_limit = allow_artificial_entering ? cols_ : art_start_;
    for (long iter = 0; iter < kMaxPivots; ++iter) {
      int enter = -1;  // Bland: smallest index with positive reduced cost
      for (int j = 0; j < enter_limit; ++j) {
        if (z[j].sign() > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;

      int leave = -1;
      Rational best;
      for (int r = 0; r < m; ++r) {
        if (rows_[r][enter].sign() > 0) {
          Rational ratio = rows_[r][cols_] / rows_[r][enter];
          if (leave < 0 || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) throw LpUnbounded("objective unbounded above");

      pivot(leave, enter);
      // Update the reduced-cost row.
      const Rational factor = z[enter];
      if (!factor.is_zero()) {
        for (int j = 0; j <= cols_; ++j) {
          if (!rows_[leave][j].is_zero()) z[j] -= factor * rows_[leave][j];
        }
        z[enter] = Rational(0);
      }
    }
    throw LpIterationLimit("simplex pivot limit exceeded");
  }

  void pivot(int leave, int enter) {
    const int m = static_cast<int>(rows_.size());
    const Rational p = rows_[leave][enter];
    for (int j = 0; j <= cols_; ++j) rows_[leave][j] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == leave) continue;
      const Rational f = rows_[r][enter];
      if (f.is_zero()) continue;
      for (int j = 0; j <= cols_; ++j) {
        if (!rows_[leave][j].is_zero()) rows_[r][j] -= f * rows_[leave][j];
      }
      rows_[r][enter] = Rational(0);
    }
    basis_[leave] = enter;
  }

  int num_structural_ = 0;
  int cols_ = 0;
  int art_start_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> basis_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  if (static_cast<int>(lp.objective.size()) != lp.num_vars) {
    throw DimensionMismatch("objective length does not match variable count");
  }
  Tableau t(lp);
  if (t.phase1().sign() != 0) throw LpInfeasible("no feasible point");
  t.drop_artificials();
  return t.phase2(lp);
}

}  // namespace dat

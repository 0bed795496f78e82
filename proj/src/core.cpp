#include "dat/core.hpp"

#include <algorithm>
#include <numeric>

#include "dat/rng.hpp"

namespace dat {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::DirectStrict: return "direct-strict";
    case Mode::DirectWeak: return "direct-weak";
    case Mode::GeneralStrict: return "general-strict";
    case Mode::GeneralWeak: return "general-weak";
  }
  return "?";
}

Mode mode_from_string(const std::string& text) {
  if (text == "direct-strict") return Mode::DirectStrict;
  if (text == "direct-weak") return Mode::DirectWeak;
  if (text == "general-strict") return Mode::GeneralStrict;
  if (text == "general-weak") return Mode::GeneralWeak;
  throw ParseError("unknown mode '" + text + "'");
}

ValidationError::ValidationError(Kind kind, int i, int j, Rational actual)
    : Error([&] {
        std::string what;
        switch (kind) {
          case Kind::NegativeEntry:
            what = "negative entry at (" + std::to_string(i) + "," + std::to_string(j) + "): " + actual.str();
            break;
          case Kind::RowSumMismatch:
            what = "row " + std::to_string(i) + " sums to " + actual.str();
            break;
          case Kind::ColSumMismatch:
            what = "column " + std::to_string(j) + " sums to " + actual.str();
            break;
        }
        return what;
      }()),
      kind_(kind),
      i_(i),
      j_(j),
      actual_(std::move(actual)) {}

DemandMatrix validate_demand_matrix(const RatGrid& raw) {
  const int n = raw.n();
  if (n < 1) throw DimensionMismatch("demand matrix must have n >= 1");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (raw(i, j).sign() < 0) throw ValidationError(ValidationError::Kind::NegativeEntry, i, j, raw(i, j));
    }
  }
  const Rational one(1);
  for (int i = 0; i < n; ++i) {
    Rational sum;
    for (int j = 0; j < n; ++j) sum += raw(i, j);
    if (sum != one) throw ValidationError(ValidationError::Kind::RowSumMismatch, i, -1, sum);
  }
  for (int j = 0; j < n; ++j) {
    Rational sum;
    for (int i = 0; i < n; ++i) sum += raw(i, j);
    if (sum != one) throw ValidationError(ValidationError::Kind::ColSumMismatch, -1, j, sum);
  }
  return DemandMatrix{n, raw};
}

Topology validate_topology(int n, std::int64_t degree, const CountGrid& counts) {
  if (n < 1 || counts.n() != n) throw DimensionMismatch("topology must have n >= 1 and an n x n count grid");
  if (degree < 0) throw ParamOutOfRange("topology degree must be non-negative");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (counts(i, j) < 0) throw ValidationError(ValidationError::Kind::NegativeEntry, i, j, Rational(counts(i, j)));
    }
  }
  for (int i = 0; i < n; ++i) {
    std::int64_t sum = 0;
    for (int j = 0; j < n; ++j) sum += counts(i, j);
    if (sum != degree) throw ValidationError(ValidationError::Kind::RowSumMismatch, i, -1, Rational(sum));
  }
  for (int j = 0; j < n; ++j) {
    std::int64_t sum = 0;
    for (int i = 0; i < n; ++i) sum += counts(i, j);
    if (sum != degree) throw ValidationError(ValidationError::Kind::ColSumMismatch, -1, j, Rational(sum));
  }
  return Topology{n, degree, counts};
}

std::string to_string(MatrixFamily family) {
  switch (family) {
    case MatrixFamily::M1: return "M1";
    case MatrixFamily::M2: return "M2";
    case MatrixFamily::StrongUpper: return "strong-upper";
    case MatrixFamily::DirectUpper: return "direct-upper";
    case MatrixFamily::WeakUpper2x2: return "weak-upper-2x2";
    case MatrixFamily::WeakDirectUpper: return "weak-direct-upper";
    case MatrixFamily::FigSecondStage: return "fig-second-stage";
    case MatrixFamily::FigFlowExample: return "fig-flow-example";
    case MatrixFamily::Uniform: return "uniform";
  }
  return "?";
}

MatrixFamily family_from_string(const std::string& tag) {
  if (tag == "M1") return MatrixFamily::M1;
  if (tag == "M2") return MatrixFamily::M2;
  if (tag == "strong-upper") return MatrixFamily::StrongUpper;
  if (tag == "direct-upper") return MatrixFamily::DirectUpper;
  if (tag == "weak-upper-2x2") return MatrixFamily::WeakUpper2x2;
  if (tag == "weak-direct-upper") return MatrixFamily::WeakDirectUpper;
  if (tag == "fig-second-stage") return MatrixFamily::FigSecondStage;
  if (tag == "fig-flow-example") return MatrixFamily::FigFlowExample;
  if (tag == "uniform") return MatrixFamily::Uniform;
  throw ParseError("unknown matrix family '" + tag + "'");
}

namespace {

RatGrid grid_2x2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  RatGrid g(2);
  g(0, 0) = a;
  g(0, 1) = b;
  g(1, 0) = c;
  g(1, 1) = d;
  return g;
}

}  // namespace

DemandMatrix family_matrix(const FamilySpec& spec) {
  switch (spec.family) {
    case MatrixFamily::M1:
      return validate_demand_matrix(grid_2x2(Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)));
    case MatrixFamily::M2:
      return validate_demand_matrix(grid_2x2(Rational(9, 10), Rational(1, 10), Rational(1, 10), Rational(9, 10)));
    case MatrixFamily::StrongUpper: {
      const Rational eps = spec.kappa - Rational(5, 6);
      if (eps.sign() <= 0 || spec.kappa > Rational(1)) {
        throw ParamOutOfRange("strong-upper requires 5/6 < kappa <= 1, got " + spec.kappa.str());
      }
      return validate_demand_matrix(grid_2x2(Rational(1) - eps, eps, eps, Rational(1) - eps));
    }
    case MatrixFamily::DirectUpper: {
      const int n = spec.n;
      if (n < 2) throw ParamOutOfRange("direct-upper requires n >= 2");
      const Rational base(n, 2 * n - 1);
      const Rational eps = spec.kappa - base;
      if (eps.sign() <= 0) {
        throw ParamOutOfRange("direct-upper requires kappa > n/(2n-1), got " + spec.kappa.str());
      }
      const Rational delta = min(eps / Rational(2), Rational(1, 2 * n - 1));
      RatGrid g(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          g(i, j) = (i == j) ? Rational(1) - delta : delta / Rational(n - 1);
        }
      }
      return validate_demand_matrix(g);
    }
    case MatrixFamily::WeakUpper2x2:
      return validate_demand_matrix(grid_2x2(Rational(5, 9), Rational(4, 9), Rational(4, 9), Rational(5, 9)));
    case MatrixFamily::WeakDirectUpper: {
      const int n = spec.n;
      if (n < 1) throw ParamOutOfRange("weak-direct-upper requires n >= 1");
      const bool even = n % 2 == 0;
      const Rational a = even ? Rational(1) : Rational(3, 2);
      const Rational b = even ? Rational(1) : Rational(1, 2);
      const Rational scale(1, 2 * n - 1);
      RatGrid g(n);
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          Rational cell;
          if (i == j) {
            cell = Rational(5, 2) - (i % 2 == 1 ? a : b);
          } else if ((i + j) % 2 == 0) {
            cell = Rational(5, 2);
          } else {
            cell = Rational(3, 2);
          }
          g(i - 1, j - 1) = cell * scale;
        }
      }
      return validate_demand_matrix(g);
    }
    case MatrixFamily::FigSecondStage: {
      RatGrid g(3);
      const Rational h(3, 8), q(1, 4);
      const Rational vals[3][3] = {{h, q, h}, {h, h, q}, {q, h, h}};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = vals[i][j];
      return validate_demand_matrix(g);
    }
    case MatrixFamily::FigFlowExample: {
      RatGrid g(3);
      const long long nums[3][3] = {{4, 3, 18}, {3, 21, 1}, {18, 1, 6}};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = Rational(nums[i][j], 25);
      return validate_demand_matrix(g);
    }
    case MatrixFamily::Uniform: {
      if (spec.n < 1) throw ParamOutOfRange("uniform requires n >= 1");
      RatGrid g(spec.n, Rational(1, spec.n));
      return validate_demand_matrix(g);
    }
  }
  throw ParamOutOfRange("unknown matrix family");
}

DemandMatrix random_doubly_stochastic(int n, int k, std::uint64_t seed) {
  if (n < 1) throw ParamOutOfRange("random_doubly_stochastic requires n >= 1");
  if (k < 1) throw ParamOutOfRange("random_doubly_stochastic requires k >= 1");
  SplitMix64 rng(seed);

  std::vector<std::vector<int>> perms;
  perms.reserve(k);
  for (int t = 0; t < k; ++t) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
      std::swap(p[i], p[j]);
    }
    perms.push_back(std::move(p));
  }

  std::vector<Rational> weights(k);
  Rational total;
  for (int t = 0; t < k; ++t) {
    weights[t] = Rational(static_cast<long long>(rng.below(1u << 20) + 1));
    total += weights[t];
  }

  RatGrid g(n);
  for (int t = 0; t < k; ++t) {
    const Rational w = weights[t] / total;
    for (int i = 0; i < n; ++i) g(i, perms[t][i]) += w;
  }
  return validate_demand_matrix(g);
}

namespace {

struct Enumerator {
  int n;
  std::int64_t r;
  const std::function<bool(const Topology&)>& visit;
  CountGrid counts;
  std::vector<std::int64_t> col_rem;
  bool stopped = false;

  bool row(int i) {
    if (i == n) {
      Topology t{n, r, counts};
      if (!visit(t)) stopped = true;
      return !stopped;
    }
    return cell(i, 0, r);
  }

  bool cell(int i, int j, std::int64_t rem) {
    if (stopped) return false;
    const int rows_left_after = n - i - 1;
    if (j == n - 1) {
      if (rem <= col_rem[j] && col_rem[j] - rem <= rows_left_after * r) {
        counts(i, j) = rem;
        col_rem[j] -= rem;
        row(i + 1);
        col_rem[j] += rem;
        counts(i, j) = 0;
      }
      return !stopped;
    }
    const std::int64_t hi = std::min(rem, col_rem[j]);
    for (std::int64_t v = 0; v <= hi; ++v) {
      if (col_rem[j] - v > rows_left_after * r) continue;  // column can no longer be filled
      counts(i, j) = v;
      col_rem[j] -= v;
      cell(i, j + 1, rem - v);
      col_rem[j] += v;
      counts(i, j) = 0;
      if (stopped) return false;
    }
    return !stopped;
  }
};

}  // namespace

bool for_each_regular_topology(int n, std::int64_t r, const std::function<bool(const Topology&)>& visit) {
  if (n < 1) throw ParamOutOfRange("enumeration requires n >= 1");
  if (r < 0) throw ParamOutOfRange("enumeration requires r >= 0");
  Enumerator e{n, r, visit, CountGrid(n, 0), std::vector<std::int64_t>(n, r)};
  e.row(0);
  return !e.stopped;
}

std::vector<Topology> enumerate_regular_topologies(int n, std::int64_t r) {
  std::vector<Topology> out;
  for_each_regular_topology(n, r, [&](const Topology& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

}  // namespace dat

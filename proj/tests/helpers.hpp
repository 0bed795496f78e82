#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "dat/core.hpp"

namespace dat::testing {

inline RatGrid rat_grid(std::initializer_list<std::initializer_list<const char*>> rows) {
  const int n = static_cast<int>(rows.size());
  RatGrid g(n);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const char* cell : row) g(i, j++) = Rational::parse(cell);
    ++i;
  }
  return g;
}

inline CountGrid count_grid(std::initializer_list<std::initializer_list<long long>> rows) {
  const int n = static_cast<int>(rows.size());
  CountGrid g(n, 0);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (long long cell : row) g(i, j++) = cell;
    ++i;
  }
  return g;
}

inline DemandMatrix demand(std::initializer_list<std::initializer_list<const char*>> rows) {
  return validate_demand_matrix(rat_grid(rows));
}

inline Topology topo(std::int64_t degree, std::initializer_list<std::initializer_list<long long>> rows) {
  const CountGrid g = count_grid(rows);
  return validate_topology(g.n(), degree, g);
}

/// The built-in families available at a given size, with fixed kappa choices
/// for the parameterized ones.
inline std::vector<DemandMatrix> families_at(int n) {
  std::vector<DemandMatrix> out;
  if (n == 2) {
    out.push_back(family_matrix({MatrixFamily::M1, 0, Rational(0)}));
    out.push_back(family_matrix({MatrixFamily::M2, 0, Rational(0)}));
    out.push_back(family_matrix({MatrixFamily::StrongUpper, 0, Rational(9, 10)}));
    out.push_back(family_matrix({MatrixFamily::WeakUpper2x2, 0, Rational(0)}));
    out.push_back(family_matrix({MatrixFamily::DirectUpper, 2, Rational(3, 4)}));
  }
  if (n == 3) {
    out.push_back(family_matrix({MatrixFamily::FigSecondStage, 0, Rational(0)}));
    out.push_back(family_matrix({MatrixFamily::FigFlowExample, 0, Rational(0)}));
    out.push_back(family_matrix({MatrixFamily::DirectUpper, 3, Rational(7, 10)}));
  }
  out.push_back(family_matrix({MatrixFamily::WeakDirectUpper, n, Rational(0)}));
  out.push_back(family_matrix({MatrixFamily::Uniform, n, Rational(0)}));
  return out;
}

}  // namespace dat::testing

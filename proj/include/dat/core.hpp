#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dat/errors.hpp"
#include "dat/rational.hpp"

namespace dat {

/// Dense square grid, row-major.
template <typename T>
class Grid {
 public:
  Grid() = default;
  explicit Grid(int n, const T& init = T()) : n_(n), cells_(static_cast<std::size_t>(n) * n, init) {}

  int n() const { return n_; }
  T& operator()(int i, int j) { return cells_[static_cast<std::size_t>(i) * n_ + j]; }
  const T& operator()(int i, int j) const { return cells_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<T>& cells() const { return cells_; }

  friend bool operator==(const Grid& a, const Grid& b) = default;

 private:
  int n_ = 0;
  std::vector<T> cells_;
};

using RatGrid = Grid<Rational>;
using CountGrid = Grid<std::int64_t>;

/// Doubly stochastic matrix of pairwise demands. Entry (i,j) is the demand
/// from node i to node j in units of normalized per-node capacity.
struct DemandMatrix {
  int n = 0;
  RatGrid entries;
};

/// Directed r-regular multigraph given by arc counts; counts(i,j) parallel
/// arcs from i to j, diagonal entries are self-loops. Every row and column
/// sums to `degree`, and each arc carries capacity 1/degree.
struct Topology {
  int n = 0;
  std::int64_t degree = 0;
  CountGrid counts;
};

/// One flow: a directed walk (>= 1 arc) plus the amount carried on it.
struct Route {
  std::vector<std::pair<int, int>> path;
  Rational amount;
};

struct FlowPlan {
  std::vector<Route> routes;
};

enum class Mode { DirectStrict, DirectWeak, GeneralStrict, GeneralWeak };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& text);

struct ThroughputReport {
  Mode mode = Mode::GeneralStrict;
  Rational value;
  std::optional<FlowPlan> witness;
  std::optional<RatGrid> hosted;  // per-pair served demand
};

/// Structured validation failure; carries the exact offending value.
class ValidationError : public Error {
 public:
  enum class Kind { NegativeEntry, RowSumMismatch, ColSumMismatch };

  ValidationError(Kind kind, int i, int j, Rational actual);

  Kind kind() const { return kind_; }
  int i() const { return i_; }
  int j() const { return j_; }
  const Rational& actual() const { return actual_; }

 private:
  Kind kind_;
  int i_, j_;
  Rational actual_;
};

/// Checks non-negativity and exact row/column sums of 1.
DemandMatrix validate_demand_matrix(const RatGrid& raw);

/// Checks non-negativity and exact row/column sums equal to `degree`.
Topology validate_topology(int n, std::int64_t degree, const CountGrid& counts);

enum class MatrixFamily {
  M1,
  M2,
  StrongUpper,      // 2x2 [[1-e, e], [e, 1-e]] with e = kappa - 5/6
  DirectUpper,      // diagonal-heavy n x n family with delta = min(e/2, 1/(2n-1))
  WeakUpper2x2,     // (1/9) [[5,4],[4,5]]
  WeakDirectUpper,  // alternating 1.5/2.5 family scaled by 1/(2n-1)
  FigSecondStage,
  FigFlowExample,
  Uniform,
};

std::string to_string(MatrixFamily family);
MatrixFamily family_from_string(const std::string& tag);

struct FamilySpec {
  MatrixFamily family = MatrixFamily::M1;
  int n = 0;        // used by DirectUpper, WeakDirectUpper, Uniform
  Rational kappa;   // used by StrongUpper, DirectUpper
};

DemandMatrix family_matrix(const FamilySpec& spec);

/// Convex combination of k uniformly drawn permutation matrices with random
/// positive integer weights. Exactly doubly stochastic by construction and
/// deterministic for fixed (n, k, seed).
DemandMatrix random_doubly_stochastic(int n, int k, std::uint64_t seed);

/// Visits every n x n non-negative integer matrix whose rows and columns all
/// sum to r, exactly once, in lexicographic row-major order. The visitor
/// returns false to stop early; the function returns true when the
/// enumeration ran to completion.
bool for_each_regular_topology(int n, std::int64_t r, const std::function<bool(const Topology&)>& visit);

std::vector<Topology> enumerate_regular_topologies(int n, std::int64_t r);

}  // namespace dat

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dat/core.hpp"

namespace dat {

/// Exact Cover by 3-Sets instance: universe {1..N} with N = 3K, and a family
/// of 3-element subsets.
struct X3CInstance {
  int universe_size = 0;                  // N
  std::vector<std::array<int, 3>> sets;   // each sorted ascending, elements in 1..N
};

/// Throws InvalidX3C unless N = 3K >= 3, every set has three distinct
/// elements inside the universe, and there are at least K sets.
X3CInstance validate_x3c(int universe_size, std::vector<std::array<int, 3>> sets);

/// Amount of demand hosted directly on heavy arcs for a scaled demand x:
/// x itself when frac(x) >= 3/4, otherwise floor(x). (The proof's f.)
Rational heavy_direct_amount(const Rational& x);

/// Number of heavy arcs placed for a scaled demand x: ceil(x) when
/// frac(x) >= 3/4, otherwise floor(x). (The proof's g.)
Rational heavy_arc_count(const Rational& x);

struct ReductionArtifacts {
  DemandMatrix demand;
  Rational kappa;
  int n = 0;                 // vertex count of the produced instance
  std::int64_t n_star = 0;   // 2n-1
  Rational H;                // sum of heavy direct amounts
  Rational L;                // n*n_star minus the number of heavy arcs
  std::map<std::string, int> vertex_labels;
};

/// Builds the weak-throughput instance for an X3C input: the gadget's
/// vertex set, the exact scaled demand list, and
/// kappa = (H + 3L/4 + N/12) / (n * n_star). The returned demand matrix is
/// validated, which re-checks the construction's per-vertex sum identities.
ReductionArtifacts x3c_to_instance(const X3CInstance& inst);

struct ReductionWitness {
  Topology topology;
  FlowPlan plan;
};

/// Builds the forward-direction witness for an exact cover (0-based set
/// indices): heavy arcs carry the heavy direct amounts, covered sets route
/// through (s,u_i),(u_i,v_i),(v_i,t), uncovered sets through the
/// (u_i,v_i),(v_i,u_i) pair, plus the 1/6 residual flows (y_j,v_i),(v_i,t).
/// The plan is weak-feasible and serves exactly a kappa fraction.
ReductionWitness witness_from_cover(const X3CInstance& inst, const std::vector<int>& cover);

/// Exhaustive search over K-subsets of the family; practical cap of 20 sets.
std::optional<std::vector<int>> brute_force_x3c(const X3CInstance& inst);

}  // namespace dat

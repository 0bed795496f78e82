#pragma once

#include <cstdint>
#include <string>

#include "dat/core.hpp"
#include "dat/mincostflow.hpp"
#include "dat/oracle.hpp"

namespace dat {

/// Greedy optimizer for direct throughput: repeatedly add an arc where the
/// demand-to-arc-count ratio is largest (infinite while a positive-demand
/// pair has no arc). Optimal for direct throughput, and its result always
/// achieves at least n/(2n-1).
Topology greedy_direct(const DemandMatrix& m);

/// The three-parallel-arcs max-cost-flow gadget whose optimal n(2n-1)-unit
/// flow encodes the weak-direct-optimal topology: per pair, an arc of
/// capacity floor((2n-1)a) and cost 1, one of capacity 1 and cost
/// frac((2n-1)a), and one of capacity 2n-1 and cost 0.
FlowNetwork build_weak_direct_network(const DemandMatrix& m);

struct MaxCostResult {
  Topology topology;
  Rational value;  // the achieved weak direct throughput (the optimum)
};

/// Optimal weak-direct topology via max-cost flow on the gadget network.
MaxCostResult maxcost_weak_direct(const DemandMatrix& m);

/// floor((2n-1)M) plus the cycle rounding of its fractional part; achieves
/// weak direct throughput at least (7n-4)/(8n-4).
Topology construct_weak_direct(const DemandMatrix& m);

/// All per-pair grids of the two-stage construction for a given rounding:
/// b = (n-1)M, arc counts d = floor(b) + c + 1, excess eta = min(d - b, 1),
/// overflow sigma = ((2n-1)kappa - (n-1))M, and common excess
/// zeta(i,j) = sum_h min(eta(i,h), eta(h,j)).
struct StageQuantities {
  int n = 0;
  Rational kappa;
  RatGrid b;
  CountGrid c;  // 0/1 rounding of frac((n-1)M)
  CountGrid d;
  RatGrid eta;
  RatGrid sigma;
  RatGrid zeta;
};

/// Requires (n-1)/(2n-1) <= kappa <= 1 and a 0/1 grid c with the row/column
/// sums of frac((n-1)M) (and zeros wherever that fractional part is zero).
StageQuantities stage_quantities(const DemandMatrix& m, const Rational& kappa, const CountGrid& c);

struct TwoStageResult {
  bool feasible = false;
  Topology topology;
  FlowPlan plan;
  int retries_used = 0;
  // Diagnostics from the last sampled rounding: smallest row/column excess
  // sum, to compare against the (3/4 - eps) n threshold of the analysis.
  Rational min_row_excess;
  Rational min_col_excess;
};

/// Sample-and-verify two-stage synthesis: round frac((n-1)M) with dependent
/// rounding, route b directly and each overflow over two-hop paths weighted
/// by min(eta(i,h), eta(h,j))/zeta(i,j), and accept the first sample whose
/// plan verifies strictly at throughput kappa with stage-2 per-arc usage
/// within the excess capacities. Success certifies (M, kappa) as a
/// yes-instance with an explicit witness.
TwoStageResult two_stage_aware(const DemandMatrix& m, const Rational& kappa, int max_retries, std::uint64_t seed);

/// Demand-oblivious uniform baseline: one self-loop per node and two
/// parallel arcs per ordered pair of distinct nodes (degree 2n-1).
Topology oblivious_baseline(int n);

struct BestKnownResult {
  std::string algorithm;
  Topology topology;
  ThroughputReport report;
};

/// Runs every applicable synthesizer (greedy, max-cost, weak-direct
/// construction, two-stage over a kappa bisection, oblivious baseline),
/// evaluates each candidate with the oracle for `objective`, and returns
/// the best. Deterministic for a fixed seed.
BestKnownResult best_known(const DemandMatrix& m, Mode objective, std::uint64_t seed);

}  // namespace dat

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dat/core.hpp"

namespace dat {

enum class VerifyMode { Strict, Weak, DirectStrict, DirectWeak };

std::string to_string(VerifyMode mode);

struct Violation {
  std::string kind;  // "arc-missing", "capacity-exceeded", "served-mismatch", ...
  int i = -1;        // pair/arc row, or route index for per-route violations
  int j = -1;
  Rational amount;   // exact slack or offending amount
};

struct VerificationReport {
  bool feasible = false;
  RatGrid arc_load;  // total amount routed over arcs i->j (unscaled units)
  RatGrid served;    // per-pair delivered demand
  std::vector<Violation> violations;
};

/// Checks a candidate plan exactly: per-arc load <= counts(i,j)/degree, and
/// per-pair served == theta * a (strict) or served <= a (weak). Direct modes
/// additionally require every path to be a single arc. Violations are data,
/// not errors; feasible <=> violations empty.
VerificationReport verify_flow_plan(const Topology& g, const DemandMatrix& m, const FlowPlan& plan,
                                    VerifyMode mode, const Rational& theta = Rational(0));

/// Largest theta such that g can host theta*m with every path a single arc:
/// min over positive-demand pairs of counts(i,j) / (degree * a(i,j)), capped
/// at 1 (0 if some positive demand sits on a zero-count pair).
ThroughputReport direct_throughput(const Topology& g, const DemandMatrix& m);

/// Largest directly hosted fraction, by the overlap formula
/// sum min((2n-1) a(i,j), counts(i,j)) / ((2n-1) n); requires degree = 2n-1.
ThroughputReport weak_direct_throughput(const Topology& g, const DemandMatrix& m);

/// Largest theta such that g hosts theta*m, via the exact maximum-concurrent-
/// flow LP (edge formulation; self-demands route through a split source/sink
/// copy so every commodity uses at least one arc).
ThroughputReport throughput(const Topology& g, const DemandMatrix& m);

/// Largest hostable fraction of m: maximize total delivered subject to
/// delivered(s,t) <= degree * a(s,t), conservation and capacities; the value
/// is normalized by degree * n.
ThroughputReport weak_throughput(const Topology& g, const DemandMatrix& m);

/// Weak LP restricted to single-arc paths. Must coincide with
/// weak_direct_throughput; exposed for cross-checks.
ThroughputReport weak_throughput_single_arc_lp(const Topology& g, const DemandMatrix& m);

struct RelationQuad {
  Rational direct;
  Rational weak_direct;
  Rational strict;
  Rational weak;
};

/// Evaluates all four notions and asserts the relation chain
/// weak >= strict >= direct and weak >= weak_direct >= direct.
/// Throws RelationViolation on failure (which would be an oracle bug).
RelationQuad relation_audit(const Topology& g, const DemandMatrix& m);

/// Number of structural variables the general LP would use; lets callers
/// enforce a size cap before building it.
std::size_t throughput_lp_var_count(const Topology& g, const DemandMatrix& m, bool weak);

}  // namespace dat

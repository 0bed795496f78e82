#pragma once

#include <vector>

#include "dat/errors.hpp"
#include "dat/rational.hpp"

namespace dat {

struct FlowArc {
  int from = 0;
  int to = 0;
  Rational capacity;
  Rational cost;
};

/// Directed network with parallel arcs allowed.
struct FlowNetwork {
  int num_nodes = 0;
  int source = 0;
  int sink = 0;
  std::vector<FlowArc> arcs;
};

/// Flow of exactly `target` units of maximum total cost, computed by
/// successive shortest augmenting paths with Johnson potentials on negated
/// costs, all in exact rationals. The flow is integral whenever every
/// capacity and the target are integers. Throws TargetUnreachable when the
/// network cannot carry `target` units.
std::vector<Rational> max_cost_flow(const FlowNetwork& net, const Rational& target);

}  // namespace dat

#include "dat/mincostflow.hpp"

#include <optional>
#include <vector>

namespace dat {

namespace {

// Residual arcs come in pairs: arc 2k is the forward copy of input arc k,
// arc 2k+1 its reverse with negated cost.
struct Residual {
  int from, to;
  Rational remaining;
  Rational cost;  // negated input cost on forward arcs
};

}  // namespace

std::vector<Rational> max_cost_flow(const FlowNetwork& net, const Rational& target) {
  if (target.sign() < 0) throw TargetUnreachable("negative flow target");
  const int n = net.num_nodes;
  const int m = static_cast<int>(net.arcs.size());

  std::vector<Residual> res(2 * m);
  std::vector<std::vector<int>> out(n);
  for (int k = 0; k < m; ++k) {
    const FlowArc& a = net.arcs[k];
    if (a.capacity.sign() < 0) throw TargetUnreachable("negative arc capacity");
    res[2 * k] = {a.from, a.to, a.capacity, -a.cost};
    res[2 * k + 1] = {a.to, a.from, Rational(0), a.cost};
    out[a.from].push_back(2 * k);
    out[a.to].push_back(2 * k + 1);
  }

  // Initial potentials by Bellman-Ford over the (possibly negative) negated
  // costs; a negative cycle in this graph would mean a positive-cost cycle
  // in the input, which successive shortest paths cannot handle.
  std::vector<std::optional<Rational>> pot(n);
  pot[net.source] = Rational(0);
  for (int round = 0; round <= n; ++round) {
    bool changed = false;
    for (int e = 0; e < 2 * m; ++e) {
      if (res[e].remaining.sign() <= 0 || !pot[res[e].from]) continue;
      const Rational cand = *pot[res[e].from] + res[e].cost;
      if (!pot[res[e].to] || cand < *pot[res[e].to]) {
        pot[res[e].to] = cand;
        changed = true;
      }
    }
    if (!changed) break;
    if (round == n) throw Error("positive-cost cycle in flow network");
  }

  Rational flow_sent;
  while (flow_sent < target) {
    // Dijkstra with reduced costs (linear scan; networks here are small).
    std::vector<std::optional<Rational>> dist(n);
    std::vector<bool> done(n, false);
    std::vector<int> prev_arc(n, -1);
    dist[net.source] = Rational(0);
    while (true) {
      int at = -1;
      for (int v = 0; v < n; ++v) {
        if (!done[v] && dist[v] && (at < 0 || *dist[v] < *dist[at])) at = v;
      }
      if (at < 0) break;
      done[at] = true;
      for (int e : out[at]) {
        if (res[e].remaining.sign() <= 0 || !pot[res[e].to]) continue;
        const Rational reduced = res[e].cost + *pot[at] - *pot[res[e].to];
        const Rational cand = *dist[at] + reduced;
        if (!dist[res[e].to] || cand < *dist[res[e].to]) {
          dist[res[e].to] = cand;
          prev_arc[res[e].to] = e;
        }
      }
    }
    if (!dist[net.sink]) {
      throw TargetUnreachable("network carries only " + flow_sent.str() + " of " + target.str() + " units");
    }
    for (int v = 0; v < n; ++v) {
      if (dist[v] && pot[v]) pot[v] = *pot[v] + *dist[v];
    }

    Rational push = target - flow_sent;
    for (int v = net.sink; v != net.source;) {
      const int e = prev_arc[v];
      push = min(push, res[e].remaining);
      v = res[e].from;
    }
    for (int v = net.sink; v != net.source;) {
      const int e = prev_arc[v];
      res[e].remaining -= push;
      res[e ^ 1].remaining += push;
      v = res[e].from;
    }
    flow_sent += push;
  }

  std::vector<Rational> flow(m);
  for (int k = 0; k < m; ++k) flow[k] = res[2 * k + 1].remaining;
  return flow;
}

}  // namespace dat

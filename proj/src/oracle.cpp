#include "dat/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "dat/lp.hpp"

namespace dat {

std::string to_string(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::Strict: return "strict";
    case VerifyMode::Weak: return "weak";
    case VerifyMode::DirectStrict: return "direct-strict";
    case VerifyMode::DirectWeak: return "direct-weak";
  }
  return "?";
}

namespace {

void check_dims(const Topology& g, const DemandMatrix& m) {
  if (g.n != m.n) throw DimensionMismatch("topology has n=" + std::to_string(g.n) + " but matrix has n=" + std::to_string(m.n));
}

}  // namespace

VerificationReport verify_flow_plan(const Topology& g, const DemandMatrix& m, const FlowPlan& plan,
                                    VerifyMode mode, const Rational& theta) {
  check_dims(g, m);
  const int n = g.n;
  VerificationReport rep;
  rep.arc_load = RatGrid(n);
  rep.served = RatGrid(n);

  const bool direct = mode == VerifyMode::DirectStrict || mode == VerifyMode::DirectWeak;
  const bool strict = mode == VerifyMode::Strict || mode == VerifyMode::DirectStrict;

  for (int r = 0; r < static_cast<int>(plan.routes.size()); ++r) {
    const Route& route = plan.routes[r];
    if (route.amount.sign() < 0) {
      rep.violations.push_back({"negative-amount", r, -1, route.amount});
      continue;
    }
    if (route.path.empty()) {
      rep.violations.push_back({"empty-path", r, -1, route.amount});
      continue;
    }
    bool structurally_ok = true;
    for (std::size_t k = 0; k < route.path.size(); ++k) {
      const auto [u, v] = route.path[k];
      if (u < 0 || u >= n || v < 0 || v >= n) {
        rep.violations.push_back({"node-out-of-range", r, static_cast<int>(k), route.amount});
        structurally_ok = false;
        break;
      }
      if (k > 0 && route.path[k - 1].second != u) {
        rep.violations.push_back({"path-not-walk", r, static_cast<int>(k), route.amount});
        structurally_ok = false;
        break;
      }
    }
    if (!structurally_ok) continue;
    if (direct && route.path.size() != 1) {
      rep.violations.push_back({"not-single-arc", r, static_cast<int>(route.path.size()), route.amount});
    }
    for (const auto& [u, v] : route.path) rep.arc_load(u, v) += route.amount;
    rep.served(route.path.front().first, route.path.back().second) += route.amount;
  }

  const Rational degree(g.degree);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational& load = rep.arc_load(i, j);
      if (load.sign() == 0) continue;
      if (g.counts(i, j) == 0) {
        rep.violations.push_back({"arc-missing", i, j, load});
      } else {
        const Rational cap = Rational(g.counts(i, j)) / degree;
        if (load > cap) rep.violations.push_back({"capacity-exceeded", i, j, load - cap});
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (strict) {
        const Rational want = theta * m.entries(i, j);
        if (rep.served(i, j) != want) {
          rep.violations.push_back({"served-mismatch", i, j, rep.served(i, j) - want});
        }
      } else if (rep.served(i, j) > m.entries(i, j)) {
        rep.violations.push_back({"over-served", i, j, rep.served(i, j) - m.entries(i, j)});
      }
    }
  }

  rep.feasible = rep.violations.empty();
  return rep;
}

ThroughputReport direct_throughput(const Topology& g, const DemandMatrix& m) {
  check_dims(g, m);
  const int n = g.n;
  const Rational degree(g.degree);

  Rational value(1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (m.entries(i, j).sign() <= 0) continue;
      if (g.counts(i, j) == 0) {
        value = Rational(0);
      } else {
        value = min(value, Rational(g.counts(i, j)) / (degree * m.entries(i, j)));
      }
    }
  }

  ThroughputReport rep;
  rep.mode = Mode::DirectStrict;
  rep.value = value;
  FlowPlan plan;
  RatGrid hosted(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational amount = value * m.entries(i, j);
      hosted(i, j) = amount;
      if (amount.sign() > 0) plan.routes.push_back({{{i, j}}, amount});
    }
  }
  rep.witness = std::move(plan);
  rep.hosted = std::move(hosted);
  return rep;
}

ThroughputReport weak_direct_throughput(const Topology& g, const DemandMatrix& m) {
  check_dims(g, m);
  const int n = g.n;
  if (g.degree != 2 * static_cast<std::int64_t>(n) - 1) {
    throw DimensionMismatch("weak direct throughput requires degree 2n-1");
  }
  const Rational degree(g.degree);

  Rational total;
  RatGrid hosted(n);
  FlowPlan plan;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational overlap = min(degree * m.entries(i, j), Rational(g.counts(i, j)));
      total += overlap;
      hosted(i, j) = overlap / degree;
      if (hosted(i, j).sign() > 0) plan.routes.push_back({{{i, j}}, hosted(i, j)});
    }
  }

  ThroughputReport rep;
  rep.mode = Mode::DirectWeak;
  rep.value = total / (degree * Rational(n));
  rep.witness = std::move(plan);
  rep.hosted = std::move(hosted);
  return rep;
}

namespace {

// Edge formulation of the hosting LPs. Each positive-demand pair (s,t) is a
// commodity with one flow variable per usable arc. A commodity with s == t
// conceptually splits s into a source copy (out-arcs only) and a sink copy
// (in-arcs only), which turns the paths-of-length->=1 rule into LP structure:
// the source row counts only out-flow and there is no conservation row at s.
struct Commodity {
  int s, t;
  int var_base;
  std::vector<int> edge_ids;  // indices into `edges`
};

struct FlowLp {
  std::vector<std::pair<int, int>> edges;  // physical arcs with counts > 0
  std::vector<Commodity> commodities;
  int aux_base = 0;  // theta (strict) or delivered[k] (weak)
  LinearProgram lp;
};

FlowLp build_flow_lp(const Topology& g, const DemandMatrix& m, bool weak, bool direct_only) {
  const int n = g.n;
  const Rational degree(g.degree);
  FlowLp out;

  std::map<std::pair<int, int>, int> edge_index;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g.counts(i, j) > 0) {
        edge_index[{i, j}] = static_cast<int>(out.edges.size());
        out.edges.emplace_back(i, j);
      }
    }
  }

  int var_at = 0;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (m.entries(s, t).sign() <= 0) continue;
      Commodity c{s, t, var_at, {}};
      if (direct_only) {
        if (auto it = edge_index.find({s, t}); it != edge_index.end()) c.edge_ids.push_back(it->second);
      } else {
        c.edge_ids.resize(out.edges.size());
        for (int e = 0; e < static_cast<int>(out.edges.size()); ++e) c.edge_ids[e] = e;
      }
      var_at += static_cast<int>(c.edge_ids.size());
      out.commodities.push_back(std::move(c));
    }
  }
  out.aux_base = var_at;
  const int num_aux = weak ? static_cast<int>(out.commodities.size()) : 1;
  out.lp.num_vars = var_at + num_aux;
  out.lp.objective.assign(out.lp.num_vars, Rational(0));
  if (weak) {
    for (std::size_t k = 0; k < out.commodities.size(); ++k) out.lp.objective[out.aux_base + k] = Rational(1);
  } else {
    out.lp.objective[out.aux_base] = Rational(1);
  }

  auto& cons = out.lp.constraints;
  // Conservation + demand rows, in degree-scaled units (arc capacity = counts).
  for (std::size_t k = 0; k < out.commodities.size(); ++k) {
    const Commodity& c = out.commodities[k];
    for (int v = 0; v < n; ++v) {
      if (v == c.t && c.s != c.t) continue;  // implied by the others
      LinearConstraint row;
      row.coeffs.assign(out.lp.num_vars, Rational(0));
      row.rel = Relation::Eq;
      bool nontrivial = false;
      for (std::size_t p = 0; p < c.edge_ids.size(); ++p) {
        const auto [eu, ev] = out.edges[c.edge_ids[p]];
        const int var = c.var_base + static_cast<int>(p);
        if (eu == v) {
          row.coeffs[var] += Rational(1);
          nontrivial = true;
        }
        // For a self-demand commodity the source row counts out-arcs only.
        if (ev == v && !(c.s == c.t && v == c.s)) {
          row.coeffs[var] -= Rational(1);
          nontrivial = true;
        }
      }
      if (v == c.s) {
        const Rational demand = degree * m.entries(c.s, c.t);
        if (weak) {
          row.coeffs[out.aux_base + k] = Rational(-1);
        } else {
          row.coeffs[out.aux_base] = -demand;
        }
        nontrivial = true;
      }
      if (nontrivial) cons.push_back(std::move(row));
    }
  }
  // Arc capacities.
  for (int e = 0; e < static_cast<int>(out.edges.size()); ++e) {
    LinearConstraint row;
    row.coeffs.assign(out.lp.num_vars, Rational(0));
    row.rel = Relation::LessEq;
    row.bound = Rational(g.counts(out.edges[e].first, out.edges[e].second));
    bool used = false;
    for (const Commodity& c : out.commodities) {
      for (std::size_t p = 0; p < c.edge_ids.size(); ++p) {
        if (c.edge_ids[p] == e) {
          row.coeffs[c.var_base + static_cast<int>(p)] = Rational(1);
          used = true;
        }
      }
    }
    if (used) cons.push_back(std::move(row));
  }
  if (weak) {
    // delivered(s,t) <= degree * a(s,t)
    for (std::size_t k = 0; k < out.commodities.size(); ++k) {
      const Commodity& c = out.commodities[k];
      LinearConstraint row;
      row.coeffs.assign(out.lp.num_vars, Rational(0));
      row.rel = Relation::LessEq;
      row.coeffs[out.aux_base + k] = Rational(1);
      row.bound = degree * m.entries(c.s, c.t);
      cons.push_back(std::move(row));
    }
  } else {
    LinearConstraint row;
    row.coeffs.assign(out.lp.num_vars, Rational(0));
    row.rel = Relation::LessEq;
    row.coeffs[out.aux_base] = Rational(1);
    row.bound = Rational(1);
    cons.push_back(std::move(row));
  }
  return out;
}

// Repeated shortest-walk extraction of s->t paths from one commodity's edge
// flows; circulations that do not contribute to delivery are discarded.
void decompose_commodity(int n, const FlowLp& layout, const Commodity& c, std::vector<Rational> flow,
                         Rational remaining, const Rational& degree, FlowPlan& plan) {
  while (remaining.sign() > 0) {
    // BFS from s over positive-flow edges; arrival at t (via >= 1 arc) ends
    // the path, which handles s == t commodities as well.
    std::vector<int> prev_edge(n, -1);
    std::vector<bool> seen(n, false);
    std::deque<int> queue;
    int final_edge = -1;
    seen[c.s] = true;
    for (std::size_t p = 0; p < c.edge_ids.size() && final_edge < 0; ++p) {
      const auto [u, v] = layout.edges[c.edge_ids[p]];
      if (u != c.s || flow[p].sign() <= 0) continue;
      if (v == c.t) {
        final_edge = static_cast<int>(p);
      } else if (!seen[v]) {
        seen[v] = true;
        prev_edge[v] = static_cast<int>(p);
        queue.push_back(v);
      }
    }
    while (final_edge < 0 && !queue.empty()) {
      const int at = queue.front();
      queue.pop_front();
      for (std::size_t p = 0; p < c.edge_ids.size(); ++p) {
        const auto [u, v] = layout.edges[c.edge_ids[p]];
        if (u != at || flow[p].sign() <= 0) continue;
        if (v == c.t) {
          final_edge = static_cast<int>(p);
          break;
        }
        if (!seen[v]) {
          seen[v] = true;
          prev_edge[v] = static_cast<int>(p);
          queue.push_back(v);
        }
      }
    }
    if (final_edge < 0) throw Error("flow decomposition failed to reach the sink");

    std::vector<int> path_edges{final_edge};
    int at = layout.edges[c.edge_ids[final_edge]].first;
    while (at != c.s) {
      const int p = prev_edge[at];
      path_edges.push_back(p);
      at = layout.edges[c.edge_ids[p]].first;
    }
    std::reverse(path_edges.begin(), path_edges.end());

    Rational amount = remaining;
    for (int p : path_edges) amount = min(amount, flow[p]);
    for (int p : path_edges) flow[p] -= amount;
    remaining -= amount;

    Route route;
    for (int p : path_edges) route.path.push_back(layout.edges[c.edge_ids[p]]);
    route.amount = amount / degree;  // back to unscaled units
    plan.routes.push_back(std::move(route));
  }
}

ThroughputReport solve_hosting_lp(const Topology& g, const DemandMatrix& m, bool weak, bool direct_only) {
  check_dims(g, m);
  const int n = g.n;
  const Rational degree(g.degree);

  ThroughputReport rep;
  rep.mode = weak ? Mode::GeneralWeak : Mode::GeneralStrict;
  if (g.degree == 0) {
    rep.value = Rational(0);
    rep.witness = FlowPlan{};
    rep.hosted = RatGrid(n);
    return rep;
  }

  FlowLp layout = build_flow_lp(g, m, weak, direct_only);
  LpSolution sol = solve_lp(layout.lp);

  FlowPlan plan;
  RatGrid hosted(n);
  for (std::size_t k = 0; k < layout.commodities.size(); ++k) {
    const Commodity& c = layout.commodities[k];
    Rational delivered = weak ? sol.assignment[layout.aux_base + k]
                              : sol.assignment[layout.aux_base] * degree * m.entries(c.s, c.t);
    hosted(c.s, c.t) = delivered / degree;
    std::vector<Rational> flow(c.edge_ids.size());
    for (std::size_t p = 0; p < c.edge_ids.size(); ++p) flow[p] = sol.assignment[c.var_base + static_cast<int>(p)];
    decompose_commodity(n, layout, c, std::move(flow), delivered, degree, plan);
  }

  rep.value = weak ? sol.optimum / (degree * Rational(n)) : sol.optimum;
  rep.witness = std::move(plan);
  rep.hosted = std::move(hosted);
  return rep;
}

}  // namespace

ThroughputReport throughput(const Topology& g, const DemandMatrix& m) {
  return solve_hosting_lp(g, m, /*weak=*/false, /*direct_only=*/false);
}

ThroughputReport weak_throughput(const Topology& g, const DemandMatrix& m) {
  return solve_hosting_lp(g, m, /*weak=*/true, /*direct_only=*/false);
}

ThroughputReport weak_throughput_single_arc_lp(const Topology& g, const DemandMatrix& m) {
  ThroughputReport rep = solve_hosting_lp(g, m, /*weak=*/true, /*direct_only=*/true);
  rep.mode = Mode::DirectWeak;
  return rep;
}

RelationQuad relation_audit(const Topology& g, const DemandMatrix& m) {
  RelationQuad q;
  q.direct = direct_throughput(g, m).value;
  q.weak_direct = weak_direct_throughput(g, m).value;
  q.strict = throughput(g, m).value;
  q.weak = weak_throughput(g, m).value;
  auto expect = [](bool ok, const char* what) {
    if (!ok) throw RelationViolation(std::string("relation chain violated: ") + what);
  };
  expect(q.weak >= q.strict, "weak >= strict");
  expect(q.strict >= q.direct, "strict >= direct");
  expect(q.weak >= q.weak_direct, "weak >= weak-direct");
  expect(q.weak_direct >= q.direct, "weak-direct >= direct");
  return q;
}

std::size_t throughput_lp_var_count(const Topology& g, const DemandMatrix& m, bool weak) {
  check_dims(g, m);
  std::size_t edges = 0, pairs = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      if (g.counts(i, j) > 0) ++edges;
      if (m.entries(i, j).sign() > 0) ++pairs;
    }
  }
  return pairs * edges + (weak ? pairs : 1);
}

}  // namespace dat

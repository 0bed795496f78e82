#include "dat/reduction.hpp"

#include <algorithm>

#include "dat/oracle.hpp"

namespace dat {

X3CInstance validate_x3c(int universe_size, std::vector<std::array<int, 3>> sets) {
  if (universe_size < 3 || universe_size % 3 != 0) {
    throw InvalidX3C("universe size must be a positive multiple of 3, got " + std::to_string(universe_size));
  }
  const int k = universe_size / 3;
  if (static_cast<int>(sets.size()) < k) {
    throw InvalidX3C("need at least N/3 = " + std::to_string(k) + " sets, got " + std::to_string(sets.size()));
  }
  std::vector<int> occurrences(universe_size, 0);
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    if (s[0] == s[1] || s[1] == s[2]) throw InvalidX3C("set elements must be distinct");
    for (int x : s) {
      if (x < 1 || x > universe_size) throw InvalidX3C("set element " + std::to_string(x) + " outside the universe");
      ++occurrences[x - 1];
    }
  }
  // An element in no set makes the instance trivially unsatisfiable, and the
  // gadget's y-to-z demands (alpha_j - 1)/(6|Z|) would go negative.
  for (int j = 0; j < universe_size; ++j) {
    if (occurrences[j] == 0) throw InvalidX3C("element " + std::to_string(j + 1) + " appears in no set");
  }
  return X3CInstance{universe_size, std::move(sets)};
}

Rational heavy_direct_amount(const Rational& x) {
  return x.frac() >= Rational(3, 4) ? x : x.floor();
}

Rational heavy_arc_count(const Rational& x) {
  return x.frac() >= Rational(3, 4) ? x.ceil() : x.floor();
}

namespace {

// Vertex layout shared by the gadget builder and the witness builder.
struct GadgetLayout {
  int num_sets;        // M
  int universe;        // N
  int cover_size;      // K
  int size_a;          // |A| = 10(M-K)
  int size_b;          // |B| = 10(M/2 + N/6 - K) = 5(M-K)
  int size_z;          // |Z| = 15M - 10K
  int n;               // total vertex count
  std::int64_t n_star;

  int s() const { return 0; }
  int t() const { return 1; }
  int u(int i) const { return 2 + 2 * i; }        // i in [0, M)
  int v(int i) const { return 3 + 2 * i; }
  int y(int j) const { return 2 + 2 * num_sets + j; }  // j in [0, N)
  int a(int i) const { return 2 + 2 * num_sets + universe + i; }
  int b(int i) const { return a(0) + size_a + i; }
  int z(int i) const { return a(0) + size_a + size_b + i; }
  int w(int i, int j) const { return a(0) + size_a + size_b + size_z + 5 * i + j; }  // j in [0, 5)
};

GadgetLayout make_layout(const X3CInstance& inst) {
  GadgetLayout lay;
  lay.num_sets = static_cast<int>(inst.sets.size());
  lay.universe = inst.universe_size;
  lay.cover_size = inst.universe_size / 3;
  const int m = lay.num_sets, k = lay.cover_size, n_elems = lay.universe;
  lay.size_a = 10 * (m - k);
  lay.size_b = (10 * (3 * m + n_elems - 6 * k)) / 6;  // 10(M/2 + N/6 - K)
  lay.size_z = 15 * m - 10 * k;
  if (lay.size_a < 0 || lay.size_b < 0) {
    throw InvalidX3C("fewer sets than N/3; gadget sizes would be negative");
  }
  lay.n = 2 + 2 * m + n_elems + lay.size_a + lay.size_b + lay.size_z + 5 * m;
  lay.n_star = 2 * static_cast<std::int64_t>(lay.n) - 1;
  return lay;
}

// All scaled demands of the gadget (the matrix is this grid divided by n*).
RatGrid scaled_demands(const X3CInstance& inst, const GadgetLayout& lay) {
  const int m = lay.num_sets, n_elems = lay.universe, k = lay.cover_size;
  const Rational n_star(lay.n_star);
  RatGrid d(lay.n);

  std::vector<int> alpha(n_elems, 0);  // number of sets containing each element
  for (const auto& s : inst.sets) {
    for (int x : s) ++alpha[x - 1];
  }

  d(lay.s(), lay.s()) = n_star - Rational(lay.size_a) - Rational(k);
  for (int i = 0; i < m; ++i) {
    d(lay.s(), lay.u(i)) = Rational(1, 2);
    d(lay.s(), lay.v(i)) = Rational(1, 2);
  }
  for (int i = 0; i < lay.size_a; ++i) d(lay.s(), lay.a(i)) = Rational(9, 10);

  d(lay.t(), lay.t()) = n_star - Rational(lay.size_b) - Rational(k);
  d(lay.t(), lay.s()) = Rational(k);
  for (int i = 0; i < lay.size_b; ++i) d(lay.t(), lay.b(i)) = Rational(1);

  for (int i = 0; i < m; ++i) {
    d(lay.u(i), lay.u(i)) = n_star - Rational(11, 2);
    d(lay.u(i), lay.v(i)) = Rational(1, 2);
    for (int j = 0; j < 5; ++j) d(lay.u(i), lay.w(i, j)) = Rational(1);

    d(lay.v(i), lay.t()) = Rational(1, 2);
    d(lay.v(i), lay.u(i)) = Rational(1, 2);
    d(lay.v(i), lay.v(i)) = n_star - Rational(4);
    for (int x : inst.sets[i]) d(lay.v(i), lay.y(x - 1)) = Rational(1);
  }

  for (int j = 0; j < n_elems; ++j) {
    d(lay.y(j), lay.t()) = Rational(1, 6);
    d(lay.y(j), lay.y(j)) = n_star - Rational(alpha[j]);
    for (int i = 0; i < lay.size_z; ++i) d(lay.y(j), lay.z(i)) = Rational(alpha[j] - 1, 6 * lay.size_z);
  }
  for (int i = 0; i < m; ++i) {
    for (int x : inst.sets[i]) d(lay.y(x - 1), lay.v(i)) = Rational(5, 6);
  }

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < 5; ++j) {
      d(lay.w(i, j), lay.w(i, j)) = n_star - Rational(1);
      d(lay.w(i, j), lay.u(i)) = Rational(9, 10);
      for (int l = 0; l < lay.size_z; ++l) d(lay.w(i, j), lay.z(l)) = Rational(1, 10 * lay.size_z);
    }
  }

  for (int i = 0; i < lay.size_a; ++i) {
    d(lay.a(i), lay.a(i)) = n_star - Rational(1);
    d(lay.a(i), lay.s()) = Rational(1);
  }
  for (int i = 0; i < lay.size_b; ++i) {
    d(lay.b(i), lay.b(i)) = n_star - Rational(1);
    d(lay.b(i), lay.t()) = Rational(9, 10);
    for (int j = 0; j < lay.size_z; ++j) d(lay.b(i), lay.z(j)) = Rational(1, 10 * lay.size_z);
  }
  for (int i = 0; i < lay.size_z; ++i) {
    d(lay.z(i), lay.z(i)) = n_star - Rational(1, 10);
    for (int j = 0; j < lay.size_a; ++j) d(lay.z(i), lay.a(j)) = Rational(1, 10 * lay.size_z);
    for (int j = 0; j < m; ++j) d(lay.z(i), lay.v(j)) = Rational(1, 2 * lay.size_z);
  }
  return d;
}

std::map<std::string, int> label_map(const X3CInstance& inst, const GadgetLayout& lay) {
  std::map<std::string, int> labels;
  labels["s"] = lay.s();
  labels["t"] = lay.t();
  for (int i = 0; i < lay.num_sets; ++i) {
    labels["u" + std::to_string(i + 1)] = lay.u(i);
    labels["v" + std::to_string(i + 1)] = lay.v(i);
    for (int j = 0; j < 5; ++j) labels["w" + std::to_string(i + 1) + "_" + std::to_string(j + 1)] = lay.w(i, j);
  }
  for (int j = 0; j < lay.universe; ++j) labels["y" + std::to_string(j + 1)] = lay.y(j);
  for (int i = 0; i < lay.size_a; ++i) labels["a" + std::to_string(i + 1)] = lay.a(i);
  for (int i = 0; i < lay.size_b; ++i) labels["b" + std::to_string(i + 1)] = lay.b(i);
  for (int i = 0; i < lay.size_z; ++i) labels["z" + std::to_string(i + 1)] = lay.z(i);
  (void)inst;
  return labels;
}

}  // namespace

ReductionArtifacts x3c_to_instance(const X3CInstance& inst) {
  const GadgetLayout lay = make_layout(inst);
  const RatGrid d = scaled_demands(inst, lay);
  const Rational n_star(lay.n_star);

  RatGrid entries(lay.n);
  for (int i = 0; i < lay.n; ++i) {
    for (int j = 0; j < lay.n; ++j) entries(i, j) = d(i, j) / n_star;
  }

  ReductionArtifacts art;
  art.demand = validate_demand_matrix(entries);  // re-proves the sum identities
  art.n = lay.n;
  art.n_star = lay.n_star;
  Rational sum_g;
  for (int i = 0; i < lay.n; ++i) {
    for (int j = 0; j < lay.n; ++j) {
      art.H += heavy_direct_amount(d(i, j));
      sum_g += heavy_arc_count(d(i, j));
    }
  }
  art.L = Rational(lay.n) * n_star - sum_g;
  art.kappa = (art.H + Rational(3, 4) * art.L + Rational(lay.universe, 12)) / (Rational(lay.n) * n_star);
  art.vertex_labels = label_map(inst, lay);
  return art;
}

ReductionWitness witness_from_cover(const X3CInstance& inst, const std::vector<int>& cover) {
  const GadgetLayout lay = make_layout(inst);
  const int m = lay.num_sets, n_elems = lay.universe;

  std::vector<bool> in_cover(m, false);
  std::vector<int> covered_by(n_elems, -1);
  for (int idx : cover) {
    if (idx < 0 || idx >= m) throw NotACover("set index " + std::to_string(idx) + " out of range");
    if (in_cover[idx]) throw NotACover("set index " + std::to_string(idx) + " listed twice");
    in_cover[idx] = true;
    for (int x : inst.sets[idx]) {
      if (covered_by[x - 1] >= 0) throw NotACover("element " + std::to_string(x) + " covered twice");
      covered_by[x - 1] = idx;
    }
  }
  for (int j = 0; j < n_elems; ++j) {
    if (covered_by[j] < 0) throw NotACover("element " + std::to_string(j + 1) + " not covered");
  }

  const RatGrid d = scaled_demands(inst, lay);
  const Rational n_star(lay.n_star);
  const Rational half(1, 2), sixth(1, 6);

  CountGrid counts(lay.n, 0);
  FlowPlan plan;
  for (int i = 0; i < lay.n; ++i) {
    for (int j = 0; j < lay.n; ++j) {
      const Rational g = heavy_arc_count(d(i, j));
      if (g.sign() > 0) {
        counts(i, j) += g.num().get_si();
        plan.routes.push_back({{{i, j}}, heavy_direct_amount(d(i, j)) / n_star});
      }
    }
  }

  for (int i = 0; i < m; ++i) {
    const int ui = lay.u(i), vi = lay.v(i);
    if (in_cover[i]) {
      counts(lay.s(), ui) += 1;
      counts(ui, vi) += 1;
      counts(vi, lay.t()) += 1;
      plan.routes.push_back({{{lay.s(), ui}}, half / n_star});
      plan.routes.push_back({{{lay.s(), ui}, {ui, vi}}, half / n_star});
      plan.routes.push_back({{{ui, vi}}, half / n_star});
      plan.routes.push_back({{{vi, lay.t()}}, half / n_star});
    } else {
      counts(ui, vi) += 1;
      counts(vi, ui) += 1;
      plan.routes.push_back({{{ui, vi}}, half / n_star});
      plan.routes.push_back({{{vi, ui}}, half / n_star});
      plan.routes.push_back({{{ui, vi}, {vi, ui}}, half / n_star});
    }
  }
  for (int j = 0; j < n_elems; ++j) {
    const int vi = lay.v(covered_by[j]);
    plan.routes.push_back({{{lay.y(j), vi}, {vi, lay.t()}}, sixth / n_star});
  }

  ReductionWitness wit;
  wit.topology = validate_topology(lay.n, lay.n_star, counts);
  wit.plan = std::move(plan);
  return wit;
}

std::optional<std::vector<int>> brute_force_x3c(const X3CInstance& inst) {
  const int m = static_cast<int>(inst.sets.size());
  if (m > 20) throw ParamOutOfRange("brute-force X3C search is capped at 20 sets");
  const int k = inst.universe_size / 3;
  if (inst.universe_size > 60) throw ParamOutOfRange("brute-force X3C search is capped at a universe of 60");

  std::vector<std::uint64_t> masks(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int x : inst.sets[i]) masks[i] |= std::uint64_t{1} << (x - 1);
  }
  const std::uint64_t full = inst.universe_size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << inst.universe_size) - 1;

  std::vector<int> chosen;
  // Lexicographically first exact cover, by depth-first search.
  std::function<bool(int, std::uint64_t)> rec = [&](int start, std::uint64_t acc) {
    if (acc == full) return static_cast<int>(chosen.size()) == k;
    if (static_cast<int>(chosen.size()) == k) return false;
    for (int i = start; i < m; ++i) {
      if ((acc & masks[i]) != 0) continue;
      chosen.push_back(i);
      if (rec(i + 1, acc | masks[i])) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (rec(0, 0)) return chosen;
  return std::nullopt;
}

}  // namespace dat

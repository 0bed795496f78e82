#include "dat/io.hpp"

#include <fstream>
#include <sstream>

namespace dat {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError("expected a rational literal string, got: " + j.dump());
}

int field_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(std::string("missing or non-integer field '") + key + "'");
  }
  return j[key].get<int>();
}

RatGrid rational_grid_from_json(const Json& rows, int n) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw ParseError("entry grid is not an n x n array");
  RatGrid g(n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) throw ParseError("entry grid is not square");
    for (int j = 0; j < n; ++j) g(i, j) = rational_from_json(rows[i][j]);
  }
  return g;
}

Json rational_grid_to_json(const RatGrid& g) {
  Json rows = Json::array();
  for (int i = 0; i < g.n(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < g.n(); ++j) row.push_back(g(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json matrix_to_json(const DemandMatrix& m) {
  return Json{{"n", m.n}, {"entries", rational_grid_to_json(m.entries)}};
}

DemandMatrix matrix_from_json(const Json& j) {
  const int n = field_int(j, "n");
  if (n < 1) throw ParseError("matrix must have n >= 1");
  return validate_demand_matrix(rational_grid_from_json(j.at("entries"), n));
}

std::string matrix_to_csv(const DemandMatrix& m) {
  std::ostringstream out;
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      if (j) out << ',';
      out << m.entries(i, j).str();
    }
    out << '\n';
  }
  return out.str();
}

DemandMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Rational> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(Rational::parse(field));
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw ParseError("empty CSV matrix");
  RatGrid g(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw ParseError("CSV row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) + " fields, expected " +
                       std::to_string(n));
    }
    for (int j = 0; j < n; ++j) g(i, j) = rows[i][j];
  }
  return validate_demand_matrix(g);
}

Json topology_to_json(const Topology& g) {
  Json rows = Json::array();
  for (int i = 0; i < g.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < g.n; ++j) row.push_back(g.counts(i, j));
    rows.push_back(std::move(row));
  }
  return Json{{"n", g.n}, {"degree", g.degree}, {"counts", std::move(rows)}};
}

Topology topology_from_json(const Json& j) {
  const int n = field_int(j, "n");
  if (n < 1) throw ParseError("topology must have n >= 1");
  if (!j.contains("degree") || !j["degree"].is_number_integer()) throw ParseError("missing integer field 'degree'");
  const auto& rows = j.at("counts");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw ParseError("count grid is not an n x n array");
  CountGrid counts(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) throw ParseError("count grid is not square");
    for (int c = 0; c < n; ++c) {
      if (!rows[i][c].is_number_integer()) throw ParseError("topology counts must be integers");
      counts(i, c) = rows[i][c].get<std::int64_t>();
    }
  }
  return validate_topology(n, j["degree"].get<std::int64_t>(), counts);
}

Json plan_to_json(const FlowPlan& plan) {
  Json routes = Json::array();
  for (const Route& r : plan.routes) {
    Json path = Json::array();
    for (const auto& [u, v] : r.path) path.push_back(Json::array({u, v}));
    routes.push_back(Json{{"path", std::move(path)}, {"amount", r.amount.str()}});
  }
  return Json{{"routes", std::move(routes)}};
}

FlowPlan plan_from_json(const Json& j) {
  FlowPlan plan;
  for (const auto& rj : j.at("routes")) {
    Route route;
    for (const auto& arc : rj.at("path")) {
      if (!arc.is_array() || arc.size() != 2) throw ParseError("path arcs must be [i, j] pairs");
      route.path.emplace_back(arc[0].get<int>(), arc[1].get<int>());
    }
    route.amount = rational_from_json(rj.at("amount"));
    plan.routes.push_back(std::move(route));
  }
  return plan;
}

Json verification_to_json(const VerificationReport& rep) {
  Json violations = Json::array();
  for (const Violation& v : rep.violations) {
    violations.push_back(Json{{"kind", v.kind}, {"i", v.i}, {"j", v.j}, {"amount", v.amount.str()}});
  }
  return Json{{"feasible", rep.feasible},
              {"arc_load", rational_grid_to_json(rep.arc_load)},
              {"served", rational_grid_to_json(rep.served)},
              {"violations", std::move(violations)}};
}

Json throughput_report_to_json(const ThroughputReport& rep, bool include_witness) {
  Json j{{"mode", to_string(rep.mode)}, {"value", rep.value.str()}};
  if (rep.hosted) j["hosted"] = rational_grid_to_json(*rep.hosted);
  if (include_witness && rep.witness) j["witness"] = plan_to_json(*rep.witness);
  return j;
}

Json x3c_to_json(const X3CInstance& inst) {
  Json sets = Json::array();
  for (const auto& s : inst.sets) sets.push_back(Json::array({s[0], s[1], s[2]}));
  return Json{{"N", inst.universe_size}, {"sets", std::move(sets)}};
}

X3CInstance x3c_from_json(const Json& j) {
  const int n = field_int(j, "N");
  std::vector<std::array<int, 3>> sets;
  for (const auto& sj : j.at("sets")) {
    if (!sj.is_array() || sj.size() != 3) throw ParseError("X3C sets must have exactly 3 elements");
    sets.push_back({sj[0].get<int>(), sj[1].get<int>(), sj[2].get<int>()});
  }
  return validate_x3c(n, std::move(sets));
}

Json reduction_artifacts_to_json(const ReductionArtifacts& art) {
  Json labels = Json::object();
  for (const auto& [name, idx] : art.vertex_labels) labels[name] = idx;
  return Json{{"n", art.n},
              {"n_star", art.n_star},
              {"kappa", art.kappa.str()},
              {"H", art.H.str()},
              {"L", art.L.str()},
              {"vertex_labels", std::move(labels)},
              {"demand", matrix_to_json(art.demand)}};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
}

namespace {

Json parse_json_file(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace

DemandMatrix load_demand_matrix(const std::filesystem::path& path) {
  if (path.extension() == ".csv") return matrix_from_csv(read_text_file(path));
  return matrix_from_json(parse_json_file(path));
}

Topology load_topology(const std::filesystem::path& path) { return topology_from_json(parse_json_file(path)); }

X3CInstance load_x3c(const std::filesystem::path& path) { return x3c_from_json(parse_json_file(path)); }

FlowPlan load_plan(const std::filesystem::path& path) { return plan_from_json(parse_json_file(path)); }

}  // namespace dat

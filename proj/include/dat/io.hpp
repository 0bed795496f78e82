#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dat/core.hpp"
#include "dat/oracle.hpp"
#include "dat/reduction.hpp"

namespace dat {

using Json = nlohmann::json;

// Matrix file format: {"n": int, "entries": [[string,...],...]} where each
// entry is a rational literal "p/q", an integer, or a decimal string
// converted exactly. The CSV alternative is n rows of comma-separated
// rational literals.

Json matrix_to_json(const DemandMatrix& m);
DemandMatrix matrix_from_json(const Json& j);
std::string matrix_to_csv(const DemandMatrix& m);
DemandMatrix matrix_from_csv(const std::string& text);

// Topology file format: {"n": int, "degree": int, "counts": [[int,...],...]}.
Json topology_to_json(const Topology& g);
Topology topology_from_json(const Json& j);

// FlowPlan file format:
// {"routes": [{"path": [[i,j],...], "amount": "p/q"},...]}.
Json plan_to_json(const FlowPlan& plan);
FlowPlan plan_from_json(const Json& j);

Json verification_to_json(const VerificationReport& rep);

Json throughput_report_to_json(const ThroughputReport& rep, bool include_witness);

// X3C file format: {"N": int, "sets": [[int,int,int],...]} (1-based elements).
Json x3c_to_json(const X3CInstance& inst);
X3CInstance x3c_from_json(const Json& j);

Json reduction_artifacts_to_json(const ReductionArtifacts& art);

/// Loads a demand matrix from a .json or .csv file (by extension).
DemandMatrix load_demand_matrix(const std::filesystem::path& path);
Topology load_topology(const std::filesystem::path& path);
X3CInstance load_x3c(const std::filesystem::path& path);
FlowPlan load_plan(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace dat

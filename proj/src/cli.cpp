#include "dat/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "dat/io.hpp"
#include "dat/rng.hpp"
#include "dat/synthesis.hpp"

namespace dat {

namespace {

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json input_record(const std::string& path) {
  return Json{{"path", path}, {"digest", fnv1a_digest(read_text_file(path))}};
}

std::size_t lp_var_cap() {
  if (const char* env = std::getenv("DAW_MAX_LP_VARS")) {
    return static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
  }
  return 2000;
}

void ensure_lp_size(const Topology& g, const DemandMatrix& m, bool weak) {
  const std::size_t vars = throughput_lp_var_count(g, m, weak);
  const std::size_t cap = lp_var_cap();
  if (vars > cap) {
    throw Error("refusing to build an exact LP with " + std::to_string(vars) + " variables (cap " +
                std::to_string(cap) + "; raise DAW_MAX_LP_VARS to override)");
  }
}

ThroughputReport evaluate_mode(const Topology& g, const DemandMatrix& m, Mode mode) {
  switch (mode) {
    case Mode::DirectStrict: return direct_throughput(g, m);
    case Mode::DirectWeak: return weak_direct_throughput(g, m);
    case Mode::GeneralStrict:
      ensure_lp_size(g, m, false);
      return throughput(g, m);
    case Mode::GeneralWeak:
      ensure_lp_size(g, m, true);
      return weak_throughput(g, m);
  }
  throw Error("unknown mode");
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
};

void emit(std::ostream& out, const Json& report) { out << report.dump(2) << "\n"; }

struct GenArgs {
  std::string family;
  bool random = false;
  int n = 0;
  int k = 4;
  std::string kappa;
  std::string out_path;
  bool csv = false;
};

struct FileArgs {
  std::string matrix;
  std::string graph;
  std::string mode = "general-strict";
  std::string algo;
  std::string kappa;
  int retries = 64;
  std::string out_graph;
  bool witness = false;
  bool verify_witness = false;
  bool evaluate_general = false;
  std::string x3c;
  std::string out_path;
  bool brute_force = false;
  int trials = 10;
  std::string csv_path;
};

int cmd_gen(const GenArgs& a, std::uint64_t seed, std::ostream& out) {
  DemandMatrix m;
  Json source;
  if (a.random) {
    if (a.n < 1) throw ParamOutOfRange("--random requires --n >= 1");
    m = random_doubly_stochastic(a.n, a.k, seed);
    source = Json{{"random", Json{{"n", a.n}, {"k", a.k}, {"seed", seed}}}};
  } else {
    FamilySpec spec;
    spec.family = family_from_string(a.family);
    spec.n = a.n;
    if (!a.kappa.empty()) spec.kappa = Rational::parse(a.kappa);
    m = family_matrix(spec);
    source = Json{{"family", a.family}};
  }
  if (!a.out_path.empty()) {
    // file format follows the extension; --csv only affects stdout output
    if (std::filesystem::path(a.out_path).extension() == ".csv") {
      write_text_file(a.out_path, matrix_to_csv(m));
    } else {
      write_text_file(a.out_path, matrix_to_json(m).dump(2) + "\n");
    }
    emit(out, Json{{"command", "gen"}, {"source", source}, {"n", m.n}, {"written", a.out_path}});
  } else if (a.csv) {
    out << matrix_to_csv(m);
  } else {
    emit(out, matrix_to_json(m));
  }
  return 0;
}

int cmd_eval(const FileArgs& a, std::uint64_t seed, std::ostream& out) {
  Timer timer;
  const Topology g = load_topology(a.graph);
  const DemandMatrix m = load_demand_matrix(a.matrix);
  Json results = Json::object();
  std::vector<Mode> modes;
  if (a.mode == "all") {
    modes = {Mode::DirectStrict, Mode::DirectWeak, Mode::GeneralStrict, Mode::GeneralWeak};
  } else {
    modes = {mode_from_string(a.mode)};
  }
  for (Mode mode : modes) {
    const ThroughputReport rep = evaluate_mode(g, m, mode);
    Json rj = throughput_report_to_json(rep, a.witness);
    if (a.verify_witness && rep.witness) {
      VerifyMode vm;
      Rational theta;
      switch (mode) {
        case Mode::DirectStrict: vm = VerifyMode::DirectStrict; theta = rep.value; break;
        case Mode::DirectWeak: vm = VerifyMode::DirectWeak; break;
        case Mode::GeneralStrict: vm = VerifyMode::Strict; theta = rep.value; break;
        case Mode::GeneralWeak: vm = VerifyMode::Weak; break;
      }
      rj["verification"] = verification_to_json(verify_flow_plan(g, m, *rep.witness, vm, theta));
    }
    results[to_string(mode)] = rj;
  }
  emit(out, Json{{"command", "eval"},
                 {"seed", seed},
                 {"inputs", Json{{"graph", input_record(a.graph)}, {"matrix", input_record(a.matrix)}}},
                 {"results", results},
                 {"timings_ms", Json{{"total", timer.ms()}}}});
  return 0;
}

int cmd_enum(const FileArgs& a, std::uint64_t seed, std::ostream& out) {
  Timer timer;
  const DemandMatrix m = load_demand_matrix(a.matrix);
  const Mode mode = mode_from_string(a.mode);
  const std::int64_t degree = 2 * static_cast<std::int64_t>(m.n) - 1;

  std::optional<Rational> best;
  Topology best_topo;
  long long count = 0;
  for_each_regular_topology(m.n, degree, [&](const Topology& g) {
    ++count;
    const Rational value = evaluate_mode(g, m, mode).value;
    if (!best || value > *best) {
      best = value;
      best_topo = g;
    }
    return true;
  });
  emit(out, Json{{"command", "enum"},
                 {"seed", seed},
                 {"inputs", Json{{"matrix", input_record(a.matrix)}}},
                 {"results", Json{{"mode", a.mode},
                                  {"topologies_enumerated", count},
                                  {"best_value", best->str()},
                                  {"best_topology", topology_to_json(best_topo)}}},
                 {"timings_ms", Json{{"total", timer.ms()}}}});
  return 0;
}

int cmd_audit(const FileArgs& a, std::uint64_t seed, std::ostream& out) {
  Timer timer;
  const Topology g = load_topology(a.graph);
  const DemandMatrix m = load_demand_matrix(a.matrix);
  ensure_lp_size(g, m, true);
  const RelationQuad q = relation_audit(g, m);
  emit(out, Json{{"command", "audit"},
                 {"seed", seed},
                 {"inputs", Json{{"graph", input_record(a.graph)}, {"matrix", input_record(a.matrix)}}},
                 {"results", Json{{"direct", q.direct.str()},
                                  {"weak_direct", q.weak_direct.str()},
                                  {"strict", q.strict.str()},
                                  {"weak", q.weak.str()},
                                  {"chain_holds", true}}},
                 {"timings_ms", Json{{"total", timer.ms()}}}});
  return 0;
}

int cmd_synth(const FileArgs& a, std::uint64_t seed, std::ostream& out) {
  Timer timer;
  const DemandMatrix m = load_demand_matrix(a.matrix);
  Json results = Json::object();
  Topology topo;

  if (a.algo == "greedy") {
    topo = greedy_direct(m);
    results["direct_value"] = direct_throughput(topo, m).value.str();
  } else if (a.algo == "maxcost") {
    MaxCostResult r = maxcost_weak_direct(m);
    topo = std::move(r.topology);
    results["weak_direct_value"] = r.value.str();
  } else if (a.algo == "weakdir-construct") {
    topo = construct_weak_direct(m);
    results["weak_direct_value"] = weak_direct_throughput(topo, m).value.str();
    results["guarantee"] = (Rational(7 * m.n - 4) / Rational(8 * m.n - 4)).str();
  } else if (a.algo == "two-stage") {
    if (a.kappa.empty()) throw ParamOutOfRange("--algo two-stage requires --kappa");
    const Rational kappa = Rational::parse(a.kappa);
    TwoStageResult r = two_stage_aware(m, kappa, a.retries, seed);
    results["feasible"] = r.feasible;
    results["retries_used"] = r.retries_used;
    results["min_row_excess"] = r.min_row_excess.str();
    results["min_col_excess"] = r.min_col_excess.str();
    const Rational eps = Rational(5, 8) - kappa;
    results["good_row_threshold"] = ((Rational(3, 4) - eps) * Rational(m.n)).str();
    if (!r.feasible) {  // a legitimate outcome of the sample-and-verify loop
      emit(out, Json{{"command", "synth"},
                     {"algo", a.algo},
                     {"seed", seed},
                     {"inputs", Json{{"matrix", input_record(a.matrix)}}},
                     {"results", results},
                     {"timings_ms", Json{{"total", timer.ms()}}}});
      return 0;
    }
    topo = std::move(r.topology);
    results["kappa"] = kappa.str();
    if (a.witness) results["witness"] = plan_to_json(r.plan);
  } else if (a.algo == "oblivious") {
    topo = oblivious_baseline(m.n);
    if (a.evaluate_general) {
      ensure_lp_size(topo, m, false);
      results["strict_value"] = throughput(topo, m).value.str();
    }
    results["direct_value"] = direct_throughput(topo, m).value.str();
    results["weak_direct_value"] = weak_direct_throughput(topo, m).value.str();
  } else if (a.algo == "best") {
    const Mode objective = mode_from_string(a.mode);
    if (objective == Mode::GeneralStrict || objective == Mode::GeneralWeak) {
      ensure_lp_size(oblivious_baseline(m.n), m, objective == Mode::GeneralWeak);
    }
    BestKnownResult r = best_known(m, objective, seed);
    topo = std::move(r.topology);
    results["algorithm"] = r.algorithm;
    results["objective"] = a.mode;
    results["value"] = r.report.value.str();
  } else {
    throw ParamOutOfRange("unknown algorithm '" + a.algo + "'");
  }

  results["topology"] = topology_to_json(topo);
  if (!a.out_graph.empty()) write_text_file(a.out_graph, topology_to_json(topo).dump(2) + "\n");
  emit(out, Json{{"command", "synth"},
                 {"algo", a.algo},
                 {"seed", seed},
                 {"inputs", Json{{"matrix", input_record(a.matrix)}}},
                 {"results", results},
                 {"timings_ms", Json{{"total", timer.ms()}}}});
  return 0;
}

int cmd_reduce(const FileArgs& a, std::uint64_t seed, std::ostream& out) {
  Timer timer;
  const X3CInstance inst = load_x3c(a.x3c);
  const ReductionArtifacts art = x3c_to_instance(inst);
  Json results = reduction_artifacts_to_json(art);

  if (a.brute_force) {
    const auto cover = brute_force_x3c(inst);
    results["cover_found"] = cover.has_value();
    if (cover) {
      results["cover"] = *cover;
      if (a.witness) {
        const ReductionWitness wit = witness_from_cover(inst, *cover);
        const VerificationReport check = verify_flow_plan(wit.topology, art.demand, wit.plan, VerifyMode::Weak);
        Rational served;
        for (int i = 0; i < art.n; ++i) {
          for (int j = 0; j < art.n; ++j) served += check.served(i, j);
        }
        results["witness_feasible"] = check.feasible;
        results["witness_served_fraction"] = (served / Rational(art.n)).str();
        results["witness_topology"] = topology_to_json(wit.topology);
      }
    }
  }
  if (!a.out_path.empty()) write_text_file(a.out_path, results.dump(2) + "\n");
  emit(out, Json{{"command", "reduce"},
                 {"seed", seed},
                 {"inputs", Json{{"x3c", input_record(a.x3c)}}},
                 {"results", results},
                 {"timings_ms", Json{{"total", timer.ms()}}}});
  return 0;
}

int cmd_bench(const FileArgs& a, int n, bool with_families, std::uint64_t seed, std::ostream& out) {
  Timer timer;
  if (n < 1) throw ParamOutOfRange("bench requires --n >= 1");
  static const std::string kHeader =
      "n,family,seed,greedy_direct,maxcost_weak_direct,construct_weak_direct,oblivious_strict";

  std::ostringstream rows;
  const auto emit_row = [&](const std::string& label, std::uint64_t row_seed, const DemandMatrix& m) {
    const Topology greedy = greedy_direct(m);
    const MaxCostResult mc = maxcost_weak_direct(m);
    const Topology cons = construct_weak_direct(m);
    const Topology obl = oblivious_baseline(n);
    std::string oblivious_value;  // left empty when the exact LP would exceed the cap
    if (throughput_lp_var_count(obl, m, false) <= lp_var_cap()) {
      oblivious_value = throughput(obl, m).value.str();
    }
    rows << n << ',' << label << ',' << row_seed << ',' << direct_throughput(greedy, m).value.str() << ','
         << mc.value.str() << ',' << weak_direct_throughput(cons, m).value.str() << ',' << oblivious_value << '\n';
  };

  if (with_families) {
    for (MatrixFamily family : {MatrixFamily::M1, MatrixFamily::M2, MatrixFamily::WeakUpper2x2,
                                MatrixFamily::FigSecondStage, MatrixFamily::FigFlowExample, MatrixFamily::Uniform,
                                MatrixFamily::WeakDirectUpper}) {
      FamilySpec spec{family, n, Rational(0)};
      try {
        const DemandMatrix m = family_matrix(spec);
        if (m.n == n) emit_row(to_string(family), seed, m);
      } catch (const Error&) {
        // family not instantiable at this size
      }
    }
  }
  for (int trial = 0; trial < a.trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
    emit_row("random", trial_seed, random_doubly_stochastic(n, 4, trial_seed));
  }

  if (!a.csv_path.empty()) {
    const std::filesystem::path path(a.csv_path);
    const bool need_header = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream file(path, std::ios::app);
    if (!file) throw Error("cannot open " + a.csv_path + " for appending");
    if (need_header) file << kHeader << '\n';
    file << rows.str();
    emit(out, Json{{"command", "bench"},
                   {"seed", seed},
                   {"results", Json{{"trials", a.trials}, {"n", n}, {"appended_to", a.csv_path}}},
                   {"timings_ms", Json{{"total", timer.ms()}}}});
  } else {
    out << kHeader << '\n' << rows.str();
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"demand-aware throughput toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags like --seed after the subcommand too
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "global seed; all randomness derives from it");

  GenArgs gen;
  FileArgs fa;
  int bench_n = 3;

  auto* gen_cmd = app.add_subcommand("gen", "generate a demand matrix (named family or random)");
  gen_cmd->add_option("--family", gen.family, "family tag (M1, M2, strong-upper, direct-upper, weak-upper-2x2, weak-direct-upper, fig-second-stage, fig-flow-example, uniform)");
  gen_cmd->add_flag("--random", gen.random, "random Birkhoff combination instead of a family");
  gen_cmd->add_option("--n", gen.n, "matrix size (families that need it, and --random)");
  gen_cmd->add_option("--k", gen.k, "number of permutations for --random");
  gen_cmd->add_option("--kappa", gen.kappa, "family parameter kappa, e.g. 9/10");
  gen_cmd->add_option("--out", gen.out_path, "output file (.json or .csv)");
  gen_cmd->add_flag("--csv", gen.csv, "CSV output");

  auto* eval_cmd = app.add_subcommand("eval", "run throughput oracles on a (graph, matrix) pair");
  eval_cmd->add_option("--graph", fa.graph, "topology JSON file")->required();
  eval_cmd->add_option("--matrix", fa.matrix, "demand matrix file")->required();
  eval_cmd->add_option("--mode", fa.mode, "direct-strict | direct-weak | general-strict | general-weak | all");
  eval_cmd->add_flag("--witness", fa.witness, "include witness flow plans in the report");
  eval_cmd->add_flag("--verify", fa.verify_witness, "re-check each witness and include the verification report");

  auto* enum_cmd = app.add_subcommand("enum", "brute-force the best (2n-1)-regular topology");
  enum_cmd->add_option("--matrix", fa.matrix, "demand matrix file")->required();
  enum_cmd->add_option("--mode", fa.mode, "objective mode")->required();

  auto* audit_cmd = app.add_subcommand("audit", "evaluate all four notions and check the relation chain");
  audit_cmd->add_option("--graph", fa.graph, "topology JSON file")->required();
  audit_cmd->add_option("--matrix", fa.matrix, "demand matrix file")->required();

  auto* synth_cmd = app.add_subcommand("synth", "synthesize a topology for a matrix");
  synth_cmd->add_option("--algo", fa.algo, "greedy | maxcost | weakdir-construct | two-stage | oblivious | best")->required();
  synth_cmd->add_option("--matrix", fa.matrix, "demand matrix file")->required();
  synth_cmd->add_option("--kappa", fa.kappa, "target throughput for two-stage");
  synth_cmd->add_option("--retries", fa.retries, "rounding retries for two-stage");
  synth_cmd->add_option("--mode", fa.mode, "objective for --algo best");
  synth_cmd->add_option("--out-graph", fa.out_graph, "write the topology JSON here");
  synth_cmd->add_flag("--witness", fa.witness, "include the witness plan (two-stage)");
  synth_cmd->add_flag("--evaluate-general", fa.evaluate_general, "also run the strict LP (oblivious)");

  auto* reduce_cmd = app.add_subcommand("reduce", "build the X3C hardness gadget");
  reduce_cmd->add_option("--x3c", fa.x3c, "X3C instance JSON file")->required();
  reduce_cmd->add_option("--out", fa.out_path, "write the artifacts JSON here");
  reduce_cmd->add_flag("--brute-force", fa.brute_force, "solve the X3C instance exhaustively");
  reduce_cmd->add_flag("--witness", fa.witness, "build and verify the cover witness");

  auto* bench_cmd = app.add_subcommand("bench", "seeded random trials, CSV rows per trial");
  bench_cmd->add_option("--n", bench_n, "matrix size");
  bench_cmd->add_option("--trials", fa.trials, "number of trials");
  bench_cmd->add_option("--csv", fa.csv_path, "append rows to this CSV file");
  bool bench_families = false;
  bench_cmd->add_flag("--families", bench_families, "also benchmark the built-in families at this size");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, seed, out);
    if (eval_cmd->parsed()) return cmd_eval(fa, seed, out);
    if (enum_cmd->parsed()) return cmd_enum(fa, seed, out);
    if (audit_cmd->parsed()) return cmd_audit(fa, seed, out);
    if (synth_cmd->parsed()) return cmd_synth(fa, seed, out);
    if (reduce_cmd->parsed()) return cmd_reduce(fa, seed, out);
    if (bench_cmd->parsed()) return cmd_bench(fa, bench_n, bench_families, seed, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace dat

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "surgecc/codegen.hpp"
#include "surgecc/experiment.hpp"
#include "surgecc/mapper.hpp"
#include "surgecc/rng.hpp"

using namespace surgecc;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;

LayoutKind parse_layout(const std::string& s) {
  if (s == "hexagonal") return LayoutKind::Hexagonal;
  if (s == "row") return LayoutKind::Row;
  if (s == "pair") return LayoutKind::Pair;
  throw RoutingError("unknown layout: " + s);
}

SubstrateKind parse_substrate(const std::string& s) {
  if (s == "color") return SubstrateKind::Color;
  if (s == "surface") return SubstrateKind::Surface;
  throw RoutingError("unknown substrate: " + s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

nlohmann::json schedule_to_json(const CompiledSchedule& sched, const RoutingGraph& g,
                                const Labeling& lab) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : sched.layers) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& op : layer) {
      nlohmann::json o;
      o["gate"] = op.gate.index;
      o["kind"] = op.gate.gate.kind == GateKind::Cnot ? "cnot" : "t";
      o["control"] = op.gate.gate.control;
      o["target"] = op.gate.gate.target;
      o["path"] = op.path;
      o["ancilla"] = op.ancilla_vertex;
      o["factory"] = op.factory;
      ops.push_back(std::move(o));
    }
    layers.push_back(std::move(ops));
  }
  nlohmann::json j;
  j["depth"] = sched.depth();
  j["layers"] = std::move(layers);
  nlohmann::json labj = nlohmann::json::array();
  for (size_t q = 0; q < lab.num_labels(); ++q)
    labj.push_back({{"label", q}, {"vertex", lab.vertex_of(q)}, {"slot", g.vertex_name(lab.vertex_of(q))}});
  j["labeling"] = std::move(labj);
  return j;
}

struct CodegenOptions {
  std::string substrate = "color";
  int distance = 3;
  // color
  std::string layout = "row";
  int cols = 3, rows = 2;
  std::string left = "u0.0", right = "u1.0";
  std::vector<std::string> snake{"d0.0"};
  std::string ancilla_slot;
  // surface
  int snake_patches = 1;
  bool folded_right = true;
  std::string basis = "zz";
};

MergeInstance build_instance(const CodegenOptions& opt, std::unique_ptr<ColorSubstrate>& keep) {
  const MergeBasis basis = opt.basis == "xx" ? MergeBasis::XX : MergeBasis::ZZ;
  if (parse_substrate(opt.substrate) == SubstrateKind::Surface)
    return build_surface_merge(opt.distance, opt.snake_patches, basis, opt.folded_right);
  keep = std::make_unique<ColorSubstrate>(build_color_substrate(
      parse_layout(opt.layout), Extent{opt.cols, opt.rows}, opt.distance, FactoryConfig{0, 1}));
  MergeSpec spec;
  spec.substrate = keep.get();
  spec.basis = basis;
  auto slot = [&](const std::string& name) {
    auto v = keep->graph.parse_vertex(name);
    if (!v) throw RoutingError("unknown slot name: " + name);
    return *v;
  };
  spec.left_slot = slot(opt.left);
  spec.right_slot = slot(opt.right);
  for (const auto& s : opt.snake) spec.snake.push_back(slot(s));
  if (!opt.ancilla_slot.empty()) spec.logical_ancilla_slot = slot(opt.ancilla_slot);
  return build_color_merge(spec);
}

void add_codegen_flags(CLI::App* cmd, CodegenOptions& opt) {
  cmd->add_option("--substrate", opt.substrate, "color|surface")->default_val("color");
  cmd->add_option("--distance", opt.distance, "code distance (odd, >= 3)")->default_val(3);
  cmd->add_option("--layout", opt.layout, "slot layout for the color substrate")->default_val("row");
  cmd->add_option("--extent-cols", opt.cols)->default_val(3);
  cmd->add_option("--extent-rows", opt.rows)->default_val(2);
  cmd->add_option("--left", opt.left, "left patch slot, e.g. u0.0");
  cmd->add_option("--right", opt.right, "right patch slot");
  cmd->add_option("--snake", opt.snake, "snake slots in path order")->delimiter(',');
  cmd->add_option("--ancilla-slot", opt.ancilla_slot, "snake slot hosting the CNOT ancilla");
  cmd->add_option("--snake-patches", opt.snake_patches, "surface snake length")->default_val(1);
  cmd->add_flag("--folded-right,!--no-folded-right", opt.folded_right,
                "right surface patch is folded");
  cmd->add_option("--basis", opt.basis, "zz|xx")->default_val("zz");
}

int run_compile(const std::string& circuit_path, const std::string& layout_s,
                const std::string& substrate_s, int factories, int reset, const std::string& metric_s,
                int restarts, int iterations, uint64_t seed, bool no_mapping, bool serial,
                const std::string& out_path) {
  const LogicalCircuit circuit = parse_circuit(read_file(circuit_path));
  const LayeredCircuit layered = layer_circuit(circuit);
  const LayoutKind layout = parse_layout(layout_s);
  const SubstrateKind substrate = parse_substrate(substrate_s);
  const Extent extent = extent_for_qubits(layout, substrate, circuit.num_qubits);
  const FactoryConfig fc{factories, reset};
  const RoutingGraph graph = build_routing_graph(layout, extent, substrate, fc);

  Labeling lab;
  long initial_cost = -1, final_cost = -1;
  if (no_mapping) {
    lab = random_labeling(graph, circuit.num_qubits, seed);
  } else {
    HillClimbConfig hc;
    hc.metric = metric_s == "depth" ? MetricKind::Depth : MetricKind::Crossings;
    hc.restarts = restarts;
    hc.max_iterations = iterations;
    hc.rng_seed = seed;
    hc.parallel = !serial;
    const MappingResult mr = hill_climb(graph, layered, hc, fc);
    lab = mr.best;
    initial_cost = mr.initial_costs[mr.best_restart];
    final_cost = mr.best_cost;
  }
  RoutingTask task{&graph, lab, layered, fc};
  const CompiledSchedule sched = route_circuit(task);

  if (!out_path.empty())
    write_file(out_path, schedule_to_json(sched, graph, lab).dump(2) + "\n");
  std::cout << "qubits " << circuit.num_qubits << ", gates " << circuit.gates.size()
            << ", input layers " << layered.num_layers() << "\n";
  if (!no_mapping)
    std::cout << "mapping cost " << initial_cost << " -> " << final_cost << "\n";
  std::cout << "depth " << sched.depth() << "\n";
  return 0;
}

int run_verify_checks(const MergeInstance& inst, int d_target, long trials) {
  const VerificationReport rep = verify_merge(inst, d_target, trials);
  auto line = [](const char* name, bool ok) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
  };
  line("split generators pairwise commute", rep.split_commuting);
  line("merged generators pairwise commute", rep.merged_commuting);
  line("S lies in both row spaces", rep.stabilizers_in_both_spans);
  line("S rank matches row-space intersection", rep.intersection_rank_ok);
  line("S commutes with the gauge group", rep.stabilizer_center_ok);
  line("intermediary set anticommutes with conjugate partners", rep.intermediary_partners_ok);
  line("gauge fixing round trip restores the split group", rep.gauge_fix_roundtrip_ok);
  line("measurement subset product equals the joint logical", rep.m_product_ok);
  line("parity conditions hold qubit-by-qubit", rep.parity_ok);
  std::cout << (rep.distance.ok ? "[ok]   " : "[FAIL] ") << "no dressed logical below distance "
            << d_target;
  if (rep.distance.exhaustive)
    std::cout << " (exhaustive)";
  else
    std::cout << " (bounded search only: exhaustive to weight " << rep.distance.searched_weight
              << ", " << rep.distance.trials << " randomized trials)";
  std::cout << "\n";
  if (rep.distance.witness)
    std::cout << "       witness: " << pauli_to_string(*rep.distance.witness) << "\n";
  std::cout << "n=" << rep.n << " rank(S)=" << rep.stabilizer_rank << " gauge_pairs="
            << rep.gauge_pairs << " logicals=" << rep.logicals << "\n";
  return rep.all_ok() ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice-surgery compiler for color-code and folded-surface-code substrates"};
  app.require_subcommand(1);

  // compile
  auto* compile = app.add_subcommand("compile", "compile a CNOT+T circuit to a routed schedule");
  std::string circuit_path, layout = "hexagonal", substrate = "color", metric = "crossings";
  std::string out_path;
  int factories = 2, reset = 2, restarts = 10, iterations = 50;
  uint64_t seed = 1;
  bool no_mapping = false, serial = false;
  compile->add_option("circuit", circuit_path, "circuit file")->required();
  compile->add_option("--layout", layout, "hexagonal|row|pair");
  compile->add_option("--substrate", substrate, "color|surface");
  compile->add_option("--factories", factories, "magic state patches");
  compile->add_option("--reset-period", reset, "layers per magic state");
  compile->add_option("--metric", metric, "crossings|depth");
  compile->add_option("--restarts", restarts);
  compile->add_option("--iterations", iterations);
  compile->add_option("--seed", seed);
  compile->add_flag("--no-mapping", no_mapping, "route under a seeded random labeling");
  compile->add_flag("--serial", serial, "disable the OpenMP neighbor sweep");
  compile->add_option("--out", out_path, "schedule JSON path");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a reproducible experiment preset");
  std::string preset = "parallelism", details_path, exp_out;
  ExperimentSpec spec;
  experiment->add_option("--preset", preset, "parallelism|factories")->required();
  experiment->add_option("--samples", spec.samples, "circuits per cell");
  experiment->add_option("--seed", spec.seed);
  experiment->add_option("--qubits", spec.num_qubits);
  experiment->add_option("--restarts", spec.restarts);
  experiment->add_option("--iterations", spec.iterations);
  experiment->add_option("--factories-restarts", spec.factories_restarts);
  experiment->add_option("--factories-iterations", spec.factories_iterations);
  experiment->add_option("--factory-counts", spec.factory_counts)->delimiter(',');
  experiment->add_option("--reset-periods", spec.reset_periods)->delimiter(',');
  std::string denom;
  experiment->add_option("--denominator", denom, "final|initial (preset default otherwise)");
  bool exp_serial = false;
  experiment->add_flag("--serial", exp_serial, "single-threaded sample loop");
  experiment->add_option("--out", exp_out, "aggregate CSV path");
  experiment->add_option("--details", details_path, "per-sample CSV path");

  // codegen
  auto* codegen = app.add_subcommand("codegen", "emit split/merged stabilizers for a merge");
  CodegenOptions cg;
  add_codegen_flags(codegen, cg);
  std::string dump_path, substrate_json_path;
  codegen->add_option("--out", dump_path, "stabilizer dump path");
  codegen->add_option("--substrate-json", substrate_json_path, "substrate JSON path (color)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the microscopic invariant suite on a merge");
  CodegenOptions vg;
  add_codegen_flags(verify, vg);
  int d_target = -1;
  long trials = 3000;
  verify->add_option("--distance-target", d_target, "defaults to the code distance");
  verify->add_option("--trials", trials, "randomized trials above the exhaustive bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (compile->parsed())
      return run_compile(circuit_path, layout, substrate, factories, reset, metric, restarts,
                         iterations, seed, no_mapping, serial, out_path);
    if (experiment->parsed()) {
      spec.preset = preset == "factories" ? ExperimentPreset::Factories : ExperimentPreset::Parallelism;
      if (preset != "factories" && preset != "parallelism")
        throw RoutingError("unknown preset: " + preset);
      spec.denominator = spec.preset == ExperimentPreset::Factories
                             ? ImprovementDenominator::Initial
                             : ImprovementDenominator::Final;
      if (denom == "final") spec.denominator = ImprovementDenominator::Final;
      if (denom == "initial") spec.denominator = ImprovementDenominator::Initial;
      spec.parallel = !exp_serial;
      const RunReport report = run_experiment(spec);
      const std::string agg = aggregate_csv(report);
      if (exp_out.empty())
        std::cout << agg;
      else
        write_file(exp_out, agg);
      if (!details_path.empty()) write_file(details_path, samples_csv(report));
      return 0;
    }
    if (codegen->parsed()) {
      std::unique_ptr<ColorSubstrate> keep;
      const MergeInstance inst = build_instance(cg, keep);
      const SubsystemCodeSpec code = build_subsystem_code(inst);
      const MeasurementSubset m = select_measurement_subset(inst);
      const std::string dump = stabilizer_dump(inst, code, m);
      if (dump_path.empty())
        std::cout << dump;
      else
        write_file(dump_path, dump);
      if (!substrate_json_path.empty() && keep)
        write_file(substrate_json_path, substrate_to_json(*keep) + "\n");
      return 0;
    }
    if (verify->parsed()) {
      std::unique_ptr<ColorSubstrate> keep;
      const MergeInstance inst = build_instance(vg, keep);
      return run_verify_checks(inst, d_target > 0 ? d_target : vg.distance, trials);
    }
  } catch (const CircuitParseError& e) {
    std::cerr << "circuit error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NoFactoriesError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RoutingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitUsage;
}

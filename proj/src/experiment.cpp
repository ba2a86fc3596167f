#include "surgecc/experiment.hpp"

#include <cmath>
#include <sstream>

#include <omp.h>

#include "surgecc/rng.hpp"

namespace surgecc {

const char* family_name(CircuitFamily f) {
  switch (f) {
    case CircuitFamily::Seq: return "seq";
    case CircuitFamily::Rand: return "rand";
    case CircuitFamily::Max: return "max";
  }
  return "?";
}

const char* layout_name(LayoutKind l) {
  switch (l) {
    case LayoutKind::Hexagonal: return "hexagonal";
    case LayoutKind::Row: return "row";
    case LayoutKind::Pair: return "pair";
  }
  return "?";
}

const char* metric_name(MetricKind m) {
  return m == MetricKind::Crossings ? "crossings" : "depth";
}

namespace {

struct CellKey {
  CircuitFamily family;
  LayoutKind layout;
  MetricKind metric;
  int factories;
  int reset;
  uint64_t tag;  // stable id deriving the cell seed
};

SampleRow run_sample(const ExperimentSpec& spec, const CellKey& cell, int sample_index,
                     uint64_t sample_seed) {
  const bool factories_preset = spec.preset == ExperimentPreset::Factories;
  RandomCircuitSpec cs;
  cs.family = cell.family;
  cs.num_qubits = spec.num_qubits;
  cs.total_gates = spec.gates_per_qubit * spec.num_qubits;
  cs.cnot_ratio = factories_preset ? spec.factories_cnot_fraction : spec.cnot_fraction;
  cs.rng_seed = derive_seed(sample_seed, {0});
  const LogicalCircuit circuit = generate_random_circuit(cs);
  const LayeredCircuit layered = layer_circuit(circuit);

  const Extent extent = extent_for_qubits(cell.layout, SubstrateKind::Color, spec.num_qubits);
  FactoryConfig fc{cell.factories, std::max(1, cell.reset)};
  const RoutingGraph graph = build_routing_graph(cell.layout, extent, SubstrateKind::Color, fc);

  HillClimbConfig hc;
  hc.metric = cell.metric;
  hc.restarts = factories_preset ? spec.factories_restarts : spec.restarts;
  hc.max_iterations = factories_preset ? spec.factories_iterations : spec.iterations;
  hc.rng_seed = derive_seed(sample_seed, {1});
  hc.parallel = false;  // samples are the parallel axis
  const MappingResult mr = hill_climb(graph, layered, hc, fc);

  const long d_initial = depth_cost(graph, layered, mr.best_initial, fc);
  const long d_final = depth_cost(graph, layered, mr.best, fc);

  SampleRow row;
  row.family = factories_preset ? "-" : family_name(cell.family);
  row.layout = layout_name(cell.layout);
  row.metric = factories_preset ? metric_name(cell.metric) : "crossings";
  row.factories = cell.factories;
  row.reset_period = cell.reset;
  row.sample = sample_index;
  row.sample_seed = sample_seed;
  row.depth_initial = d_initial;
  row.depth_final = d_final;
  row.improvement = improvement(d_initial, d_final, spec.denominator);
  return row;
}

}  // namespace

RunReport run_experiment(const ExperimentSpec& spec) {
  std::vector<CellKey> cells;
  if (spec.preset == ExperimentPreset::Parallelism) {
    uint64_t tag = 0;
    for (CircuitFamily f : spec.families)
      for (LayoutKind l : spec.layouts)
        cells.push_back({f, l, MetricKind::Crossings, 0, 0, tag++});
  } else {
    uint64_t tag = 0;
    for (MetricKind m : spec.metrics)
      for (int f : spec.factory_counts)
        for (int r : spec.reset_periods)
          cells.push_back({CircuitFamily::Rand, spec.factories_layout, m, f, r, tag++});
  }

  struct Job {
    int cell;
    int sample;
    uint64_t seed;
  };
  std::vector<Job> jobs;
  for (size_t c = 0; c < cells.size(); ++c) {
    // The seed of every sample is derived from (master seed, preset, cell
    // contents) so a single row can be reproduced in isolation. Note the
    // circuit seed depends on the cell only through the sample index for the
    // factories preset: every (f, reset, metric) cell sees the same circuit
    // set, which makes the sweep a paired comparison.
    for (int s = 0; s < spec.samples; ++s) {
      uint64_t seed;
      if (spec.preset == ExperimentPreset::Factories)
        seed = derive_seed(spec.seed, {1, static_cast<uint64_t>(s)});
      else
        seed = derive_seed(spec.seed, {0, cells[c].tag, static_cast<uint64_t>(s)});
      jobs.push_back({static_cast<int>(c), s, seed});
    }
  }

  RunReport report;
  report.rows.resize(jobs.size());
  // Exceptions cannot unwind out of the parallel region; capture the first
  // one and rethrow after the loop.
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic, 1) if (spec.parallel)
  for (size_t j = 0; j < jobs.size(); ++j) {
    try {
      report.rows[j] = run_sample(spec, cells[jobs[j].cell], jobs[j].sample, jobs[j].seed);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (size_t c = 0; c < cells.size(); ++c) {
    CellAggregate agg;
    const SampleRow& first = report.rows[c * spec.samples];
    agg.family = first.family;
    agg.layout = first.layout;
    agg.metric = first.metric;
    agg.factories = first.factories;
    agg.reset_period = first.reset_period;
    agg.samples = spec.samples;
    agg.cell_seed = derive_seed(spec.seed, {static_cast<uint64_t>(spec.preset), cells[c].tag});
    double sum_i = 0, sum_d = 0;
    for (int s = 0; s < spec.samples; ++s) {
      const SampleRow& row = report.rows[c * spec.samples + s];
      sum_i += row.improvement;
      sum_d += static_cast<double>(row.depth_final);
    }
    agg.mean_improvement = sum_i / spec.samples;
    agg.mean_depth_final = sum_d / spec.samples;
    if (spec.samples > 1) {
      double vi = 0, vd = 0;
      for (int s = 0; s < spec.samples; ++s) {
        const SampleRow& row = report.rows[c * spec.samples + s];
        vi += (row.improvement - agg.mean_improvement) * (row.improvement - agg.mean_improvement);
        vd += (row.depth_final - agg.mean_depth_final) * (row.depth_final - agg.mean_depth_final);
      }
      agg.stderr_improvement = std::sqrt(vi / (spec.samples - 1) / spec.samples);
      agg.stderr_depth_final = std::sqrt(vd / (spec.samples - 1) / spec.samples);
    } else {
      agg.stderr_improvement = std::nan("");
      agg.stderr_depth_final = std::nan("");
    }
    report.cells.push_back(agg);
  }
  return report;
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(6);
  ss << v;
  return ss.str();
}

}  // namespace

std::string aggregate_csv(const RunReport& report) {
  std::ostringstream out;
  out << "family,layout,metric,factories,reset_period,samples,mean_improvement,"
         "stderr_improvement,mean_depth_final,stderr_depth_final,cell_seed\n";
  for (const auto& c : report.cells)
    out << c.family << "," << c.layout << "," << c.metric << "," << c.factories << ","
        << c.reset_period << "," << c.samples << "," << fmt(c.mean_improvement) << ","
        << fmt(c.stderr_improvement) << "," << fmt(c.mean_depth_final) << ","
        << fmt(c.stderr_depth_final) << "," << c.cell_seed << "\n";
  return out.str();
}

std::string samples_csv(const RunReport& report) {
  std::ostringstream out;
  out << "family,layout,metric,factories,reset_period,sample,sample_seed,depth_initial,"
         "depth_final,improvement\n";
  for (const auto& r : report.rows)
    out << r.family << "," << r.layout << "," << r.metric << "," << r.factories << ","
        << r.reset_period << "," << r.sample << "," << r.sample_seed << "," << r.depth_initial
        << "," << r.depth_final << "," << fmt(r.improvement) << "\n";
  return out.str();
}

}  // namespace surgecc

// Compares the serial reference implementations of the parallel kernels
// against their OpenMP versions: the hill-climbing neighbor sweep and the
// experiment sample pool. Results must be identical; only the timing differs.
#include <chrono>
#include <cstdio>

#include <omp.h>

#include "surgecc/experiment.hpp"
#include "surgecc/rng.hpp"

using namespace surgecc;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_neighbor_sweep(MetricKind metric, int restarts, int iterations) {
  RandomCircuitSpec cs{CircuitFamily::Rand, 24, 96, metric == MetricKind::Depth ? 0.8 : 1.0, 7};
  const LogicalCircuit circuit = generate_random_circuit(cs);
  const LayeredCircuit layered = layer_circuit(circuit);
  const Extent extent = extent_for_qubits(LayoutKind::Row, SubstrateKind::Color, 24);
  const FactoryConfig fc{2, 2};
  const RoutingGraph graph = build_routing_graph(LayoutKind::Row, extent, SubstrateKind::Color, fc);

  HillClimbConfig hc;
  hc.metric = metric;
  hc.restarts = restarts;
  hc.max_iterations = iterations;
  hc.rng_seed = 11;

  hc.parallel = false;
  auto t0 = Clock::now();
  const MappingResult serial = hill_climb(graph, layered, hc, fc);
  const double ts = seconds_since(t0);

  hc.parallel = true;
  t0 = Clock::now();
  const MappingResult parallel = hill_climb(graph, layered, hc, fc);
  const double tp = seconds_since(t0);

  const bool same = serial.best == parallel.best && serial.best_cost == parallel.best_cost;
  printf("hill-climb sweep (%s)  serial %.3fs  openmp %.3fs  speedup %.2fx  identical=%s\n",
         metric_name(metric), ts, tp, ts / tp, same ? "yes" : "NO");
}

void bench_sample_pool() {
  ExperimentSpec spec;
  spec.preset = ExperimentPreset::Parallelism;
  spec.samples = 4;
  spec.families = {CircuitFamily::Rand};
  spec.layouts = {LayoutKind::Row};
  spec.seed = 5;

  spec.parallel = false;
  auto t0 = Clock::now();
  const RunReport serial = run_experiment(spec);
  const double ts = seconds_since(t0);

  spec.parallel = true;
  t0 = Clock::now();
  const RunReport parallel = run_experiment(spec);
  const double tp = seconds_since(t0);

  const bool same = aggregate_csv(serial) == aggregate_csv(parallel) &&
                    samples_csv(serial) == samples_csv(parallel);
  printf("experiment sample pool     serial %.3fs  openmp %.3fs  speedup %.2fx  identical=%s\n",
         ts, tp, ts / tp, same ? "yes" : "NO");
}

}  // namespace

int main() {
  printf("threads: %d\n", omp_get_max_threads());
  bench_neighbor_sweep(MetricKind::Crossings, 3, 20);
  bench_neighbor_sweep(MetricKind::Depth, 1, 6);
  bench_sample_pool();
  return 0;
}

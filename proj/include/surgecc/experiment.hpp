#pragma once

#include <string>
#include <vector>

#include "surgecc/circuit.hpp"
#include "surgecc/mapper.hpp"

namespace surgecc {

enum class ExperimentPreset { Parallelism, Factories };

// Defaults reproduce the two published studies: the parallelism study sweeps
// circuit family x layout for pure CNOT circuits (q=24, 4q gates, 50
// circuits, 10x50 hill climbing with the crossing metric, improvement
// relative to the final depth); the factories study sweeps factory count x
// reset period on the row layout for r=0.8 circuits and compares both
// metrics, with improvement relative to the initial depth.
struct ExperimentSpec {
  ExperimentPreset preset = ExperimentPreset::Parallelism;
  int num_qubits = 24;
  int gates_per_qubit = 4;
  int samples = 50;
  uint64_t seed = 1;
  std::vector<CircuitFamily> families{CircuitFamily::Seq, CircuitFamily::Rand, CircuitFamily::Max};
  std::vector<LayoutKind> layouts{LayoutKind::Hexagonal, LayoutKind::Row, LayoutKind::Pair};
  double cnot_fraction = 1.0;  // parallelism preset
  int restarts = 10;
  int iterations = 50;
  ImprovementDenominator denominator = ImprovementDenominator::Final;
  // factories preset
  double factories_cnot_fraction = 0.8;
  LayoutKind factories_layout = LayoutKind::Row;
  std::vector<int> factory_counts{1, 2, 4};
  std::vector<int> reset_periods{1, 3, 6};
  std::vector<MetricKind> metrics{MetricKind::Crossings, MetricKind::Depth};
  int factories_restarts = 5;    // the reported study fixes no budget here;
  int factories_iterations = 25; // a smaller one keeps the sweep tractable
  bool parallel = true;
};

struct SampleRow {
  std::string family;  // or "-" for the factories preset
  std::string layout;
  std::string metric;
  int factories = 0;
  int reset_period = 0;
  int sample = 0;
  uint64_t sample_seed = 0;
  long depth_initial = 0;
  long depth_final = 0;
  double improvement = 0.0;
};

struct CellAggregate {
  std::string family;
  std::string layout;
  std::string metric;
  int factories = 0;
  int reset_period = 0;
  int samples = 0;
  uint64_t cell_seed = 0;
  double mean_improvement = 0.0;
  double stderr_improvement = 0.0;  // NaN when samples == 1
  double mean_depth_final = 0.0;
  double stderr_depth_final = 0.0;
};

struct RunReport {
  std::vector<SampleRow> rows;
  std::vector<CellAggregate> cells;
};

RunReport run_experiment(const ExperimentSpec& spec);

std::string aggregate_csv(const RunReport& report);
std::string samples_csv(const RunReport& report);

const char* family_name(CircuitFamily f);
const char* layout_name(LayoutKind l);
const char* metric_name(MetricKind m);

}  // namespace surgecc

#pragma once

#include <cstdint>
#include <vector>

#include "surgecc/router.hpp"

namespace surgecc {

enum class MetricKind { Crossings, Depth };
enum class ImprovementDenominator { Final, Initial };

struct HillClimbConfig {
  int restarts = 10;
  int max_iterations = 50;
  MetricKind metric = MetricKind::Crossings;
  uint64_t rng_seed = 0;
  bool parallel = true;  // OpenMP neighbor sweep; false = serial reference
};

struct MappingResult {
  Labeling best;
  long best_cost = 0;
  int best_restart = 0;
  Labeling best_initial;                 // initial labeling of the winning restart
  std::vector<long> initial_costs;       // one per restart
  std::vector<std::vector<long>> traces; // cost after each accepted move
};

// Heuristic placement cost: per input layer, one shortest valid path per CNOT
// on the empty graph; each pair of paths sharing an ancilla vertex counts as
// a crossing. Paths to factories are not considered.
long crossing_cost(const RoutingGraph& g, const LayeredCircuit& layered, const Labeling& labeling);

// Exact cost: compiled depth of the shortest-first VDP solving.
long depth_cost(const RoutingGraph& g, const LayeredCircuit& layered, const Labeling& labeling,
                const FactoryConfig& factories);

// All labelings obtained by swapping the assigned vertices of two distinct
// labels that both occur in the circuit.
std::vector<Labeling> neighbors(const Labeling& labeling, const LayeredCircuit& layered);

MappingResult hill_climb(const RoutingGraph& g, const LayeredCircuit& layered,
                         const HillClimbConfig& config, const FactoryConfig& factories);

double improvement(long depth_initial, long depth_final, ImprovementDenominator denom);

}  // namespace surgecc

#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "surgecc/circuit.hpp"
#include "surgecc/routing_graph.hpp"

namespace surgecc {

class NoFactoriesError : public RoutingError {
public:
  NoFactoriesError() : RoutingError("circuit contains T gates but no factories are configured") {}
};

class UnroutableDemandError : public RoutingError {
public:
  explicit UnroutableDemandError(const std::string& what) : RoutingError(what) {}
};

struct RoutedOp {
  IndexedGate gate;
  std::vector<int> path;        // routing-graph vertices, endpoint to endpoint
  int ancilla_vertex = -1;      // interior slot hosting the logical ancilla
  int factory = -1;             // consumed factory vertex (T gates only)
};

struct CompiledSchedule {
  std::vector<std::vector<RoutedOp>> layers;
  int depth() const { return static_cast<int>(layers.size()); }
};

struct RoutingTask {
  const RoutingGraph* graph = nullptr;
  Labeling labeling;
  LayeredCircuit layered;
  FactoryConfig factories;
  // Cold start: every factory needs reset_period completed layers before its
  // first magic state. Warm start makes them available immediately.
  bool warm_start = false;
};

// Shortest valid path between two endpoint slots, avoiding occupied vertices;
// interior hops only through unoccupied ancilla slots. Minimum edge count,
// ties broken by the lexicographically smallest vertex-id sequence. On the
// surface substrate the search state carries the set of edge directions used
// so far, and only direction-complete paths count.
std::optional<std::vector<int>> shortest_valid_path(const RoutingGraph& g, int src, int dst,
                                                    const std::vector<bool>& occupied);

// One round of the shortest-first VDP subroutine. Factory countdowns are
// read (availability: countdown <= 0) and consumed factories are reset to
// reset_period; the end-of-round decrement is the caller's job.
struct VdpResult {
  std::vector<RoutedOp> routed;
  std::vector<IndexedGate> leftovers;
};
VdpResult vdp_subroutine(const RoutingGraph& g, const Labeling& labeling,
                         const std::vector<IndexedGate>& demand, std::vector<int>& factory_countdown,
                         int reset_period);

// Inserts leftovers into layers[pos]; gates conflicting with an
// earlier-indexed gate cascade into later layers. Per-qubit order (by source
// index) is preserved.
void push_leftovers(std::vector<std::vector<IndexedGate>>& layers, size_t pos,
                    std::vector<IndexedGate> leftovers);

CompiledSchedule route_circuit(const RoutingTask& task);

// Depth of the compiled schedule, abandoning the run once `cutoff` layers
// have been produced (returns cutoff in that case). Used as the hill-climbing
// cost so that clearly-worse labelings do not pay for a full compilation.
int route_depth(const RoutingTask& task, int cutoff = std::numeric_limits<int>::max());

}  // namespace surgecc

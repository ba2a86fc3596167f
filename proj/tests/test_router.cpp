#include <doctest.h>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "surgecc/rng.hpp"
#include "surgecc/router.hpp"

using namespace surgecc;

namespace {

// Independent breadth-first oracle for the shortest valid path length:
// plain state-space search over (vertex, direction mask), interior hops on
// unoccupied ancilla slots, at least two edges.
int bfs_oracle(const RoutingGraph& g, int src, int dst, const std::vector<bool>& occupied) {
  const bool masked = g.substrate == SubstrateKind::Surface;
  auto endpoints = [&](int v) {
    std::vector<int> s{v};
    if (g.pair_mate[v] >= 0) s.push_back(g.pair_mate[v]);
    return s;
  };
  const auto sources = endpoints(src);
  const auto targets = endpoints(dst);
  std::set<std::pair<int, int>> visited;
  std::deque<std::tuple<int, int, int>> queue;  // vertex, mask, dist
  for (int s : sources)
    if (!occupied[s]) queue.push_back({s, 0, 0});
  while (!queue.empty()) {
    auto [v, mask, dist] = queue.front();
    queue.pop_front();
    if (!visited.insert({v, mask}).second) continue;
    for (const auto& nb : g.adj[v]) {
      const int m = masked ? (mask | (1 << static_cast<int>(nb.dir))) : 0;
      const bool at_target =
          std::find(targets.begin(), targets.end(), nb.v) != targets.end() && !occupied[nb.v];
      if (at_target && dist + 1 >= 2 && (!masked || m == 7)) return dist + 1;
      if (g.type[nb.v] == VertexType::Ancilla && !occupied[nb.v])
        queue.push_back({nb.v, m, dist + 1});
    }
  }
  return -1;
}

struct HandGraph {
  RoutingGraph g;
};

// Star bottleneck: four data slots around one ancilla hub; any two demands
// must share the hub.
RoutingGraph star_graph() {
  RoutingGraph g;
  g.substrate = SubstrateKind::Color;
  g.extent = {64, 1};  // names unused; ids only
  g.type = {VertexType::Data, VertexType::Data, VertexType::Data, VertexType::Data,
            VertexType::Ancilla, VertexType::Ancilla, VertexType::Ancilla, VertexType::Ancilla,
            VertexType::Ancilla};
  g.adj.assign(9, {});
  auto edge = [&](int a, int b, EdgeDir d) {
    g.adj[a].push_back({b, d});
    g.adj[b].push_back({a, d});
  };
  // spokes: Li - ancilla_i - hub(4)
  edge(0, 5, EdgeDir::A);
  edge(1, 6, EdgeDir::A);
  edge(2, 7, EdgeDir::A);
  edge(3, 8, EdgeDir::A);
  edge(5, 4, EdgeDir::B);
  edge(6, 4, EdgeDir::B);
  edge(7, 4, EdgeDir::C);
  edge(8, 4, EdgeDir::C);
  g.data_vertices = {0, 1, 2, 3};
  g.label_slots = g.data_vertices;
  g.pair_mate.assign(9, -1);
  return g;
}

LayeredCircuit layered_of(std::vector<Gate> gates) {
  LogicalCircuit c;
  c.num_qubits = 0;
  for (const auto& g : gates) {
    c.num_qubits = std::max(c.num_qubits, g.target + 1);
    if (g.kind == GateKind::Cnot) c.num_qubits = std::max(c.num_qubits, g.control + 1);
  }
  c.gates = std::move(gates);
  return layer_circuit(c);
}

bool schedule_vertex_disjoint(const RoutingGraph& g, const CompiledSchedule& s) {
  for (const auto& layer : s.layers) {
    std::set<int> used;
    for (const auto& op : layer)
      for (int v : op.path) {
        if (!used.insert(v).second) return false;
        if (g.pair_mate[v] >= 0 && (v == op.path.front() || v == op.path.back()))
          if (!used.insert(g.pair_mate[v]).second) return false;
      }
  }
  return true;
}

bool schedule_complete(const LayeredCircuit& in, const CompiledSchedule& s) {
  std::set<int> want, got;
  for (const auto& layer : in.layers)
    for (const auto& ig : layer) want.insert(ig.index);
  for (const auto& layer : s.layers)
    for (const auto& op : layer)
      if (!got.insert(op.gate.index).second) return false;
  return want == got;
}

bool schedule_order_ok(const LayeredCircuit& in, const CompiledSchedule& s) {
  std::map<int, std::vector<int>> source, routed;
  for (const auto& layer : in.layers)
    for (const auto& ig : layer) {
      source[ig.gate.target].push_back(ig.index);
      if (ig.gate.kind == GateKind::Cnot) source[ig.gate.control].push_back(ig.index);
    }
  for (auto& [q, v] : source) std::sort(v.begin(), v.end());
  // Collect per-qubit indices in layer order (a qubit appears at most once
  // per layer); the sequence must equal the ascending source order.
  for (const auto& layer : s.layers)
    for (const auto& op : layer) {
      routed[op.gate.gate.target].push_back(op.gate.index);
      if (op.gate.gate.kind == GateKind::Cnot) routed[op.gate.gate.control].push_back(op.gate.index);
    }
  return source == routed;
}

}  // namespace

TEST_CASE("shortest valid path matches the BFS oracle") {
  Rng rng(21);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const LayoutKind layout =
        trial % 3 == 0 ? LayoutKind::Hexagonal : (trial % 3 == 1 ? LayoutKind::Row : LayoutKind::Pair);
    const SubstrateKind sub =
        (layout == LayoutKind::Pair && trial % 2) ? SubstrateKind::Surface : SubstrateKind::Color;
    const RoutingGraph g =
        build_routing_graph(layout, Extent{4, 4}, sub, FactoryConfig{2, 1});
    if (g.num_vertices() > 50) continue;
    std::vector<bool> occ(g.num_vertices(), false);
    for (int v = 0; v < g.num_vertices(); ++v)
      if (g.type[v] == VertexType::Ancilla && rng.coin(0.2)) occ[v] = true;
    for (size_t i = 0; i < g.label_slots.size(); ++i)
      for (size_t j = i + 1; j < g.label_slots.size(); ++j) {
        const int a = g.label_slots[i], b = g.label_slots[j];
        const int oracle = bfs_oracle(g, a, b, occ);
        const auto path = shortest_valid_path(g, a, b, occ);
        if (oracle < 0) {
          CHECK(!path.has_value());
        } else {
          REQUIRE(path.has_value());
          CHECK(static_cast<int>(path->size()) - 1 == oracle);
          CHECK(is_valid_path(g, *path));
          for (size_t k = 1; k + 1 < path->size(); ++k) CHECK(!occ[(*path)[k]]);
        }
        ++checked;
      }
  }
  CHECK(checked >= 500);
}

TEST_CASE("adjacent data patches route around the direct edge") {
  const RoutingGraph g = build_routing_graph(LayoutKind::Pair, Extent{4, 4}, SubstrateKind::Color,
                                             FactoryConfig{0, 1});
  const int u = *g.parse_vertex("u0.0"), d = *g.parse_vertex("d0.0");
  const std::vector<bool> occ(g.num_vertices(), false);
  const auto p = shortest_valid_path(g, u, d, occ);
  REQUIRE(p.has_value());
  CHECK(p->size() >= 3);
  CHECK(p->front() == u);
  CHECK(p->back() == d);
}

TEST_CASE("bottleneck: two demands through one hub") {
  const RoutingGraph g = star_graph();
  // Oracle: every valid path between distinct data slots passes vertex 4.
  const std::vector<bool> occ(g.num_vertices(), false);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      const auto p = shortest_valid_path(g, a, b, occ);
      REQUIRE(p.has_value());
      CHECK(std::count(p->begin(), p->end(), 4) == 1);
    }
  Labeling lab;
  lab.vertex_of_label = {0, 1, 2, 3};
  std::vector<int> countdown;
  const auto demand = layered_of({{GateKind::Cnot, 0, 1}, {GateKind::Cnot, 2, 3}}).layers[0];
  VdpResult r = vdp_subroutine(g, lab, demand, countdown, 1);
  CHECK(r.routed.size() == 1);
  CHECK(r.leftovers.size() == 1);
  CHECK(r.routed[0].gate.index == 0);  // ties break toward the lower gate index
  CHECK(r.leftovers[0].index == 1);
}

TEST_CASE("push semantics") {
  // leftover gate 5 conflicts with later-indexed gate 7 in the next layer
  std::vector<std::vector<IndexedGate>> layers{
      {{{GateKind::Cnot, 1, 2}, 7}, {{GateKind::Cnot, 3, 4}, 8}}};
  push_leftovers(layers, 0, {{{GateKind::Cnot, 0, 1}, 5}});
  REQUIRE(layers.size() == 2);
  CHECK(layers[0].size() == 2);  // gate 5 and gate 8
  CHECK(layers[0][0].index == 5);
  CHECK(layers[0][1].index == 8);
  REQUIRE(layers[1].size() == 1);
  CHECK(layers[1][0].index == 7);

  // conflict-free leftovers insert without cascading
  std::vector<std::vector<IndexedGate>> free_layers{{{{GateKind::Cnot, 2, 3}, 9}}};
  push_leftovers(free_layers, 0, {{{GateKind::Cnot, 0, 1}, 4}});
  CHECK(free_layers.size() == 1);
  CHECK(free_layers[0].size() == 2);

  // cascading keeps per-qubit order across layers (random instances)
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    RandomCircuitSpec spec{CircuitFamily::Rand, 6, 20, 1.0, 1000 + static_cast<uint64_t>(trial)};
    const LogicalCircuit c = generate_random_circuit(spec);
    LayeredCircuit lc = layer_circuit(c);
    if (lc.num_layers() < 2) continue;
    // push a random prefix of layer 0 into layer 1
    auto moved = lc.layers[0];
    const size_t keep = rng.below(moved.size());
    std::vector<IndexedGate> leftovers(moved.begin() + keep, moved.end());
    moved.resize(keep);
    lc.layers[0] = moved;
    push_leftovers(lc.layers, 1, leftovers);
    std::map<int, std::vector<int>> per_qubit;
    for (const auto& layer : lc.layers)
      for (const auto& ig : layer) {
        per_qubit[ig.gate.target].push_back(ig.index);
        if (ig.gate.kind == GateKind::Cnot) per_qubit[ig.gate.control].push_back(ig.index);
      }
    for (auto& [q, v] : per_qubit) CHECK(std::is_sorted(v.begin(), v.end()));
    // disjointness within layers
    for (const auto& layer : lc.layers) {
      std::set<int> used;
      for (const auto& ig : layer) {
        CHECK(used.insert(ig.gate.target).second);
        if (ig.gate.kind == GateKind::Cnot) CHECK(used.insert(ig.gate.control).second);
      }
    }
  }
}

TEST_CASE("route_circuit basics") {
  const RoutingGraph g = build_routing_graph(LayoutKind::Row, Extent{4, 5}, SubstrateKind::Color,
                                             FactoryConfig{2, 2});
  RoutingTask task{&g, random_labeling(g, 4, 3), layered_of({}), FactoryConfig{2, 2}};
  CHECK(route_circuit(task).depth() == 0);

  task.layered = layered_of({{GateKind::Cnot, 0, 1}});
  CHECK(route_circuit(task).depth() == 1);
}

TEST_CASE("factory availability and the reset model") {
  const RoutingGraph g = build_routing_graph(LayoutKind::Row, Extent{4, 5}, SubstrateKind::Color,
                                             FactoryConfig{1, 3});
  RoutingTask task{&g, random_labeling(g, 2, 3), layered_of({{GateKind::T, -1, 0}}),
                   FactoryConfig{1, 3}};
  // cold start: countdown starts at reset_period, so three waiting layers
  CHECK(route_circuit(task).depth() == 4);
  task.warm_start = true;
  CHECK(route_circuit(task).depth() == 1);

  // consecutive consumptions of one factory are at least reset_period apart
  task.warm_start = false;
  task.layered = layered_of({{GateKind::T, -1, 0}, {GateKind::T, -1, 1}, {GateKind::T, -1, 0}});
  const CompiledSchedule s = route_circuit(task);
  std::map<int, std::vector<int>> consumed;
  for (int l = 0; l < s.depth(); ++l)
    for (const auto& op : s.layers[l])
      if (op.factory >= 0) consumed[op.factory].push_back(l);
  for (auto& [f, times] : consumed)
    for (size_t k = 1; k < times.size(); ++k) CHECK(times[k] - times[k - 1] >= 3);

  CHECK_THROWS_AS(
      route_circuit(RoutingTask{&g, random_labeling(g, 2, 3), layered_of({{GateKind::T, -1, 0}}),
                                FactoryConfig{0, 1}}),
      NoFactoriesError);
}

TEST_CASE("unroutable demand is a configuration error") {
  // two data slots joined by a single edge and nothing else
  RoutingGraph g;
  g.substrate = SubstrateKind::Color;
  g.extent = {64, 1};
  g.type = {VertexType::Data, VertexType::Data};
  g.adj.assign(2, {});
  g.adj[0].push_back({1, EdgeDir::A});
  g.adj[1].push_back({0, EdgeDir::A});
  g.data_vertices = {0, 1};
  g.label_slots = g.data_vertices;
  g.pair_mate.assign(2, -1);
  Labeling lab;
  lab.vertex_of_label = {0, 1};
  RoutingTask task{&g, lab, layered_of({{GateKind::Cnot, 0, 1}}), FactoryConfig{0, 1}};
  CHECK_THROWS_AS(route_circuit(task), UnroutableDemandError);
}

TEST_CASE("router property suite on random instances") {
  for (uint64_t seed = 0; seed < 120; ++seed) {
    const LayoutKind layout = seed % 3 == 0   ? LayoutKind::Hexagonal
                              : seed % 3 == 1 ? LayoutKind::Row
                                              : LayoutKind::Pair;
    const int q = 4 + static_cast<int>(seed % 5);
    const Extent e = extent_for_qubits(layout, SubstrateKind::Color, q);
    const FactoryConfig fc{1 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 4)};
    const RoutingGraph g = build_routing_graph(layout, e, SubstrateKind::Color, fc);
    RandomCircuitSpec cs{seed % 2 ? CircuitFamily::Rand : CircuitFamily::Max,
                         q - (q % 2), 3 * q, 0.85, seed};
    const LogicalCircuit c = generate_random_circuit(cs);
    const LayeredCircuit lc = layer_circuit(c);
    RoutingTask task{&g, random_labeling(g, c.num_qubits, seed * 7 + 1), lc, fc};
    const CompiledSchedule s = route_circuit(task);
    CHECK(schedule_vertex_disjoint(g, s));
    CHECK(schedule_complete(lc, s));
    CHECK(schedule_order_ok(lc, s));
    CHECK(s.depth() >= static_cast<int>(lc.num_layers()));
    // determinism
    const CompiledSchedule again = route_circuit(task);
    REQUIRE(again.depth() == s.depth());
    for (int l = 0; l < s.depth(); ++l) {
      REQUIRE(again.layers[l].size() == s.layers[l].size());
      for (size_t k = 0; k < s.layers[l].size(); ++k) {
        CHECK(again.layers[l][k].gate.index == s.layers[l][k].gate.index);
        CHECK(again.layers[l][k].path == s.layers[l][k].path);
      }
    }
    // every routed path is valid and the ancilla slot is interior
    for (const auto& layer : s.layers)
      for (const auto& op : layer) {
        CHECK(is_valid_path(g, op.path));
        CHECK(op.ancilla_vertex == op.path[1]);
      }
  }
}

TEST_CASE("route depth honors the cutoff") {
  const RoutingGraph g = build_routing_graph(LayoutKind::Row, Extent{5, 5}, SubstrateKind::Color,
                                             FactoryConfig{2, 2});
  RandomCircuitSpec cs{CircuitFamily::Rand, 8, 32, 0.9, 5};
  const LayeredCircuit lc = layer_circuit(generate_random_circuit(cs));
  RoutingTask task{&g, random_labeling(g, 8, 2), lc, FactoryConfig{2, 2}};
  const int full = route_circuit(task).depth();
  CHECK(route_depth(task) == full);
  CHECK(route_depth(task, full) == full);
  if (full > 2) CHECK(route_depth(task, full - 1) == full - 1);
  CHECK(route_depth(task, 1) == 1);
}

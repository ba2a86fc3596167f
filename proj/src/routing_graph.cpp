#include "surgecc/routing_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "surgecc/rng.hpp"

namespace surgecc {

namespace {

// Layout patterns decide which slots host logical data patches.
//
// hexagonal: the six slots around every sparse hexagonal face of the graph
//            (faces at i = 1 mod 3, j = 2 mod 4) form a ring of data patches.
//            Rings keep one slot of clearance from the extent boundary so
//            every ring vertex has a routing spoke.
// row:       rows of up-slot data patches on every other row. A full zigzag
//            row would wall off the routing space above from below (up slots
//            only reach downward, down slots upward), so only the up slots
//            carry data.
// pair:      adjacent slot pairs {u(i,j), d(i,j)} on cells with i+j even; on
//            the surface substrate such a pair hosts one folded patch.
bool ring_anchor(int i, int j, const Extent& e) {
  return i % 3 == 1 && j % 4 == 2 && i + 2 < e.cols && j + 1 < e.rows;
}

bool is_data_slot(LayoutKind layout, int i, int j, bool up, const Extent& e) {
  switch (layout) {
    case LayoutKind::Row:
      return up && j % 2 == 1;
    case LayoutKind::Pair:
      return (i + j) % 2 == 0;
    case LayoutKind::Hexagonal:
      // Member of some ring {u(i,j), d(i,j), u(i+1,j), d(i,j-1), u(i+1,j-1),
      // d(i+1,j-1)} anchored at a ring face.
      if (up) {
        if (ring_anchor(i, j, e)) return true;
        if (ring_anchor(i - 1, j, e)) return true;          // u(i+1,j)
        if (ring_anchor(i - 1, j + 1, e)) return true;      // u(i+1,j-1)
      } else {
        if (ring_anchor(i, j, e)) return true;              // d(i,j)
        if (ring_anchor(i, j + 1, e)) return true;          // d(i,j-1)
        if (ring_anchor(i - 1, j + 1, e)) return true;      // d(i+1,j-1)
      }
      return false;
  }
  return false;
}

}  // namespace

bool layout_compatible(LayoutKind layout, SubstrateKind substrate) {
  if (substrate == SubstrateKind::Surface) return layout == LayoutKind::Pair;
  return true;
}

std::optional<int> RoutingGraph::parse_vertex(const std::string& name) const {
  if (name.size() < 4 || (name[0] != 'u' && name[0] != 'd')) return std::nullopt;
  auto comma = name.find('.');
  if (comma == std::string::npos) return std::nullopt;
  try {
    int i = std::stoi(name.substr(1, comma - 1));
    int j = std::stoi(name.substr(comma + 1));
    if (i < 0 || i >= extent.cols || j < 0 || j >= extent.rows) return std::nullopt;
    return vertex_id(i, j, name[0] == 'u');
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

RoutingGraph build_routing_graph(LayoutKind layout, Extent extent, SubstrateKind substrate,
                                 const FactoryConfig& factories) {
  if (!layout_compatible(layout, substrate))
    throw RoutingError("layout incompatible with substrate (surface requires pair layout)");
  if (extent.cols < 2 || extent.rows < 2) throw RoutingError("extent too small");
  if (factories.count < 0) throw RoutingError("negative factory count");
  if (factories.reset_period < 1) throw RoutingError("reset period must be >= 1");

  RoutingGraph g;
  g.substrate = substrate;
  g.layout = layout;
  g.extent = extent;
  const int nv = 2 * extent.cols * extent.rows;
  g.type.assign(nv, VertexType::Ancilla);
  g.adj.assign(nv, {});
  g.pair_mate.assign(nv, -1);

  // Edges: diag u(i,j)-d(i,j), vert d(i,j)-u(i+1,j), horiz d(i,j)-u(i,j+1).
  auto add_edge = [&](int a, int b, EdgeDir dir) {
    g.adj[a].push_back({b, dir});
    g.adj[b].push_back({a, dir});
  };
  for (int j = 0; j < extent.rows; ++j)
    for (int i = 0; i < extent.cols; ++i) {
      const int u = g.vertex_id(i, j, true);
      const int d = g.vertex_id(i, j, false);
      add_edge(u, d, EdgeDir::A);
      if (i + 1 < extent.cols) add_edge(d, g.vertex_id(i + 1, j, true), EdgeDir::B);
      if (j + 1 < extent.rows) add_edge(d, g.vertex_id(i, j + 1, true), EdgeDir::C);
    }

  for (int j = 0; j < extent.rows; ++j)
    for (int i = 0; i < extent.cols; ++i)
      for (bool up : {true, false})
        if (is_data_slot(layout, i, j, up, extent))
          g.type[g.vertex_id(i, j, up)] = VertexType::Data;

  // Factories: boundary slots with exactly two bulk edges (the third edge
  // slot points off the layout and is reserved for the factory itself),
  // ordered along the boundary and evenly spaced.
  std::vector<int> eligible;
  auto push_if_ok = [&](int v) {
    if (g.adj[v].size() == 2 && g.type[v] == VertexType::Ancilla) eligible.push_back(v);
  };
  for (int i = 1; i < extent.cols; ++i) push_if_ok(g.vertex_id(i, 0, true));
  for (int j = 0; j + 1 < extent.rows; ++j) push_if_ok(g.vertex_id(extent.cols - 1, j, false));
  for (int i = extent.cols - 2; i >= 0; --i) push_if_ok(g.vertex_id(i, extent.rows - 1, false));
  for (int j = extent.rows - 1; j >= 1; --j) push_if_ok(g.vertex_id(0, j, true));
  if (factories.count > static_cast<int>(eligible.size()))
    throw RoutingError("extent too small for requested factory count");
  for (int k = 0; k < factories.count; ++k) {
    const int idx = static_cast<int>(static_cast<long>(k) * eligible.size() / factories.count);
    g.type[eligible[idx]] = VertexType::Factory;
  }

  for (int v = 0; v < nv; ++v) {
    if (g.type[v] == VertexType::Data) g.data_vertices.push_back(v);
    if (g.type[v] == VertexType::Factory) g.factory_vertices.push_back(v);
  }

  if (substrate == SubstrateKind::Surface) {
    // Each data pair {u(i,j), d(i,j)} is one folded patch; the up slot is the
    // labelled representative.
    for (int v : g.data_vertices) {
      if (!g.is_up(v)) continue;
      const int mate = v + 1;
      g.pair_mate[v] = mate;
      g.pair_mate[mate] = v;
      g.label_slots.push_back(v);
    }
  } else {
    g.label_slots = g.data_vertices;
  }
  return g;
}

Extent extent_for_qubits(LayoutKind layout, SubstrateKind substrate, int q) {
  if (q < 0) throw RoutingError("negative qubit count");
  Extent e{4, 3};
  for (int step = 0; step < 1000; ++step) {
    int slots = 0;
    for (int j = 0; j < e.rows; ++j)
      for (int i = 0; i < e.cols; ++i)
        for (bool up : {true, false})
          if (is_data_slot(layout, i, j, up, e)) ++slots;
    if (substrate == SubstrateKind::Surface) slots /= 2;
    if (slots >= q) return e;
    if (e.cols <= e.rows)
      ++e.cols;
    else
      ++e.rows;
  }
  throw RoutingError("qubit count too large");
}

bool is_valid_path(const RoutingGraph& g, const std::vector<int>& path) {
  if (path.size() < 3) return false;  // fewer than two edges
  std::set<int> seen;
  bool dir_used[3] = {false, false, false};
  for (size_t k = 0; k < path.size(); ++k) {
    const int v = path[k];
    if (v < 0 || v >= g.num_vertices()) throw RoutingError("path vertex out of range");
    if (!seen.insert(v).second) throw RoutingError("path is not simple");
    const bool endpoint = k == 0 || k + 1 == path.size();
    if (endpoint) {
      if (g.type[v] == VertexType::Ancilla) return false;
    } else {
      if (g.type[v] != VertexType::Ancilla) return false;
    }
    if (k > 0) {
      bool adjacent = false;
      for (const auto& nb : g.adj[path[k - 1]])
        if (nb.v == v) {
          adjacent = true;
          dir_used[static_cast<int>(nb.dir)] = true;
          break;
        }
      if (!adjacent) throw RoutingError("path vertices not adjacent");
    }
  }
  if (g.substrate == SubstrateKind::Surface)
    return dir_used[0] && dir_used[1] && dir_used[2];
  return true;
}

PackingRatioResult packing_ratio_at(LayoutKind layout, Extent extent) {
  int data_slots = 0;
  const int total_slots = 2 * extent.cols * extent.rows;
  for (int j = 0; j < extent.rows; ++j)
    for (int i = 0; i < extent.cols; ++i)
      for (bool up : {true, false})
        if (is_data_slot(layout, i, j, up, extent)) ++data_slots;
  PackingRatioResult r;
  if (layout == LayoutKind::Pair) {
    // A folded pair forms one patch.
    const int pairs = data_slots / 2;
    const int ancilla = total_slots - data_slots;
    r.ratio = static_cast<double>(pairs) / static_cast<double>(pairs + ancilla);
  } else {
    r.ratio = static_cast<double>(data_slots) / static_cast<double>(total_slots);
  }
  r.asymptotic = false;
  return r;
}

double packing_ratio(LayoutKind layout) {
  double prev = -1.0;
  for (int k = 2; k < 400; ++k) {
    const Extent e{12 * k, 12 * k};  // multiple of every pattern period
    const double cur = packing_ratio_at(layout, e).ratio;
    if (prev >= 0.0 && std::abs(cur - prev) < 1e-3) return cur;
    prev = cur;
  }
  return prev;
}

Labeling random_labeling(const RoutingGraph& g, int q, uint64_t seed) {
  if (q > static_cast<int>(g.label_slots.size()))
    throw RoutingError("more labels than data slots");
  Rng rng(seed);
  std::vector<int> slots = g.label_slots;
  // Partial Fisher-Yates: labels 0..q-1 get distinct uniform slots.
  Labeling lab;
  lab.vertex_of_label.resize(q);
  for (int k = 0; k < q; ++k) {
    const size_t j = k + static_cast<size_t>(rng.below(slots.size() - k));
    std::swap(slots[k], slots[j]);
    lab.vertex_of_label[k] = slots[k];
  }
  return lab;
}

}  // namespace surgecc

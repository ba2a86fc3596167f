#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace surgecc {

enum class LayoutKind { Hexagonal, Row, Pair };
enum class SubstrateKind { Color, Surface };
enum class VertexType { Data, Ancilla, Factory };

// The three geometric orientations of hexagonal-lattice edges. On the
// surface-code substrate a valid path must use all three.
enum class EdgeDir : uint8_t { A, B, C };

struct Extent {
  int cols = 0;
  int rows = 0;
};

struct FactoryConfig {
  int count = 0;
  int reset_period = 1;
};

class RoutingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Macroscopic routing graph: one vertex per patch slot of the substrate
// tiling. Slots come in two orientations (up/down triangles for the color
// substrate, lower/upper half-squares for the surface substrate); each bulk
// slot is adjacent to three slots of the other orientation, which makes the
// graph hexagonal for both substrates.
struct RoutingGraph {
  struct Nbr {
    int v;
    EdgeDir dir;
  };

  SubstrateKind substrate = SubstrateKind::Color;
  LayoutKind layout = LayoutKind::Hexagonal;
  Extent extent;
  std::vector<VertexType> type;
  std::vector<std::vector<Nbr>> adj;
  std::vector<int> data_vertices;     // all slots typed Data, sorted
  std::vector<int> factory_vertices;  // sorted
  // Surface substrate only: the two slots of a folded data patch reference
  // each other; -1 everywhere else.
  std::vector<int> pair_mate;
  // Vertices a logical label can be assigned to. For the color substrate this
  // is every data slot; for the surface substrate, one representative slot
  // per folded pair.
  std::vector<int> label_slots;

  int num_vertices() const { return static_cast<int>(type.size()); }
  int vertex_id(int i, int j, bool up) const { return 2 * (j * extent.cols + i) + (up ? 0 : 1); }
  bool is_up(int v) const { return (v & 1) == 0; }
  int slot_i(int v) const { return (v / 2) % extent.cols; }
  int slot_j(int v) const { return (v / 2) / extent.cols; }
  std::string vertex_name(int v) const {
    return std::string(is_up(v) ? "u" : "d") + std::to_string(slot_i(v)) + "." +
           std::to_string(slot_j(v));
  }
  std::optional<int> parse_vertex(const std::string& name) const;
};

bool layout_compatible(LayoutKind layout, SubstrateKind substrate);

RoutingGraph build_routing_graph(LayoutKind layout, Extent extent, SubstrateKind substrate,
                                 const FactoryConfig& factories);

// Smallest extent whose layout pattern yields at least q label slots.
Extent extent_for_qubits(LayoutKind layout, SubstrateKind substrate, int q);

// Path validity: simple path, endpoints on data/factory slots, interior on
// ancilla slots, at least two edges (room for the logical ancilla patch), and
// on the surface substrate at least one edge of each direction.
bool is_valid_path(const RoutingGraph& g, const std::vector<int>& path);

struct PackingRatioResult {
  double ratio = 0.0;
  bool asymptotic = false;
};

// Data-patch fraction of a layout at a given extent. Folded-surface pairs
// count as one patch, matching how the ratio is defined for the pair layout.
PackingRatioResult packing_ratio_at(LayoutKind layout, Extent extent);

// Asymptotic packing ratio: grown until two successive extents agree to 1e-3.
double packing_ratio(LayoutKind layout);

struct Labeling {
  // vertex_of_label[q] = routing-graph vertex assigned to logical qubit q
  std::vector<int> vertex_of_label;
  int vertex_of(int label) const { return vertex_of_label[label]; }
  size_t num_labels() const { return vertex_of_label.size(); }
  bool operator==(const Labeling& o) const { return vertex_of_label == o.vertex_of_label; }
  bool operator<(const Labeling& o) const { return vertex_of_label < o.vertex_of_label; }
};

Labeling random_labeling(const RoutingGraph& g, int q, uint64_t seed);

}  // namespace surgecc

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surgecc/routing_graph.hpp"

namespace surgecc {

// ---------------------------------------------------------------------------
// Color-code substrate geometry.
//
// The hexagonal tiling is modelled as the triangular lattice Z^2 with basis
// vectors (1,0) and (1/2, sqrt(3)/2). Sites with (a - b) = 2 (mod 3) are
// face centers ("holes"); the remaining sites are the 3-valent vertices of
// the hexagonal tiling and carry qubits. Every hole defines a face on its
// (up to) six lattice neighbors, and the faces are 3-colored by a mod 3.
// ---------------------------------------------------------------------------

struct Site {
  int a = 0;
  int b = 0;
  bool operator==(const Site& o) const { return a == o.a && b == o.b; }
  bool operator<(const Site& o) const { return a != o.a ? a < o.a : b < o.b; }
};

inline int positive_mod(int x, int m) { return ((x % m) + m) % m; }
inline bool is_hole(Site s) { return positive_mod(s.a - s.b, 3) == 2; }
inline int face_color(Site hole) { return positive_mod(hole.a, 3); }

inline std::array<Site, 6> site_neighbors(Site s) {
  return {Site{s.a + 1, s.b}, Site{s.a - 1, s.b}, Site{s.a, s.b + 1},
          Site{s.a, s.b - 1}, Site{s.a + 1, s.b - 1}, Site{s.a - 1, s.b + 1}};
}

// A triangular color-code patch region of side n = 3t (distance d = 2t+1).
// Up patches are anchored at their bottom-left corner, down patches (the
// point reflection) at their top-right corner.
struct ColorTriangle {
  Site anchor;
  bool up = true;
  int n = 3;

  bool contains(Site s) const {
    const int da = up ? s.a - anchor.a : anchor.a - s.a;
    const int db = up ? s.b - anchor.b : anchor.b - s.b;
    return da >= 0 && db >= 0 && da + db <= n;
  }
  std::vector<Site> qubit_sites() const;
  std::vector<Site> hole_sites() const;

  // Side 0: horizontal (bottom of an up patch / top of a down patch).
  // Side 1: the a = const side (left of up / right of down).
  // Side 2: the diagonal a + b = const side.
  std::vector<Site> side_qubits(int side) const;
};

struct ColorCodePatch {
  int t = 1;
  int d = 3;
  ColorTriangle region;
  std::vector<Site> qubits;
  struct Face {
    Site hole;
    int color;
    std::vector<Site> support;
  };
  std::vector<Face> faces;
  // boundary_colors[side] = color of the face family absent along that side
  int boundary_colors[3] = {0, 0, 0};
};

// Triangular patch with 3t^2+3t+1 qubits; throws for t < 1.
ColorCodePatch build_color_patch(int t);
ColorCodePatch build_color_patch_at(int t, ColorTriangle region);

// ---------------------------------------------------------------------------
// Patch tiling. Up patches sit at i*U + j*V, the down patch of cell (i,j) is
// the point reflection anchored at up_anchor + DELTA. The offsets are chosen
// so that every patch has the hole sublattice in the right position and all
// three interface classes leave exactly one line of extra ancilla sites
// (the A \ A* qubits) between facing boundaries.
// ---------------------------------------------------------------------------

struct ColorTilingParams {
  int t = 1;
  int n() const { return 3 * t; }
  Site up_step_i() const { return {n() + 5, -1}; }   // U
  Site up_step_j() const { return {4, n() + 1}; }     // V
  Site down_offset() const { return {n() + 3, n() - 1}; }  // DELTA
};

ColorTriangle slot_region(const ColorTilingParams& p, int i, int j, bool up);

// One corridor of extra ancilla sites between two adjacent patches.
struct Interface {
  int slot_a = -1;  // routing-graph vertex ids
  int slot_b = -1;
  std::vector<Site> corridor;      // the A \ A* sites of this interface
  std::vector<Site> wall_holes_a;  // patch-a holes whose faces extend
  std::vector<Site> wall_holes_b;
  std::vector<Site> corridor_holes;  // face centers on the corridor line
  int side_a = 0;  // which side of patch a faces this interface
  int side_b = 0;
};

Interface build_interface(const ColorTilingParams& p, const RoutingGraph& g, int va, int vb);

// Site-level substrate: regions for every slot of the routing graph plus the
// corridors of every edge.
struct ColorSubstrate {
  ColorTilingParams params;
  RoutingGraph graph;
  std::vector<ColorTriangle> regions;          // indexed by routing vertex
  std::vector<Interface> interfaces;           // one per routing edge
  std::map<std::pair<int, int>, int> interface_index;  // (min,max) vertex -> idx

  const Interface& interface_between(int va, int vb) const;
};

ColorSubstrate build_color_substrate(LayoutKind layout, Extent extent, int distance,
                                     const FactoryConfig& factories);

// ---------------------------------------------------------------------------
// Surface-code patches (square tiling). The folded variant is the rotated
// code plus the fold pairing; stacking the two halves is a layout concern
// and does not change the stabilizers.
// ---------------------------------------------------------------------------

enum class SurfaceVariant { Standard, Rotated, Folded };

struct SurfaceCodePatch {
  int d = 3;
  SurfaceVariant variant = SurfaceVariant::Rotated;
  int qubit_cols = 0;
  int qubit_rows = 0;
  struct Face {
    bool x_type = false;
    std::vector<int> support;  // qubit ids, row-major (col + row*cols)
    int fi = 0, fj = 0;        // face grid coordinates
  };
  std::vector<Face> faces;
  // Folded only: fold_qubit_pairs[(i,j)] = (j,i); involution on faces is
  // derived from this. Qubits on the diagonal map to themselves.
  std::vector<std::pair<int, int>> fold_qubit_pairs;
  std::vector<std::pair<int, int>> fold_face_pairs;  // indices into faces
};

// Rotated d x d surface code; throws unless d is odd and >= 3.
SurfaceCodePatch build_rotated_surface_patch(int d);
SurfaceCodePatch build_folded_surface_patch(int d);

// ---------------------------------------------------------------------------
// Region assignment summary + JSON dump (consumed by codegen and the CLI).
// ---------------------------------------------------------------------------

std::string substrate_to_json(const ColorSubstrate& sub);

}  // namespace surgecc

#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "surgecc/gf2.hpp"
#include "surgecc/substrate.hpp"

using namespace surgecc;

namespace {

// Minimum weight of a one-type logical operator of a standalone CSS patch:
// a support commuting with every opposite-type face and outside the
// same-type face span. Exhaustive up to max_weight.
int min_logical_weight(const std::vector<ColorCodePatch::Face>& faces,
                       const std::vector<Site>& qubits, int max_weight) {
  std::map<Site, int> index;
  for (size_t i = 0; i < qubits.size(); ++i) index[qubits[i]] = static_cast<int>(i);
  const size_t n = qubits.size();
  std::vector<BitVec> face_rows;
  for (const auto& f : faces) {
    BitVec v(n);
    for (const Site& s : f.support) v.set(index.at(s));
    face_rows.push_back(v);
  }
  auto rref = face_rows;
  auto piv = gf2_rref(rref);
  std::vector<size_t> idx;
  int found = 0;
  std::function<bool(int, size_t, BitVec&)> rec = [&](int depth, size_t start, BitVec& sup) {
    if (depth == found) {
      for (const auto& f : face_rows)
        if (BitVec::dot(sup, f)) return false;
      return !gf2_in_span(rref, piv, sup);
    }
    for (size_t q = start; q < n; ++q) {
      sup.set(q);
      if (rec(depth + 1, q + 1, sup)) {
        sup.set(q, false);
        return true;
      }
      sup.set(q, false);
    }
    return false;
  };
  for (found = 1; found <= max_weight; ++found) {
    BitVec sup(n);
    if (rec(0, 0, sup)) return found;
  }
  return -1;
}

}  // namespace

TEST_CASE("triangular color patches have 3t^2+3t+1 qubits") {
  for (int t = 1; t <= 6; ++t) {
    const ColorCodePatch p = build_color_patch(t);
    CHECK(p.d == 2 * t + 1);
    CHECK(static_cast<int>(p.qubits.size()) == 3 * t * t + 3 * t + 1);
    CHECK(static_cast<int>(p.faces.size()) == (3 * t * t + 3 * t) / 2);
    // boundary faces have weight 4, bulk faces weight 6
    int w4 = 0, w6 = 0;
    for (const auto& f : p.faces) {
      if (f.support.size() == 4) ++w4;
      if (f.support.size() == 6) ++w6;
      CHECK((f.support.size() == 4 || f.support.size() == 6));
    }
    CHECK(w4 == 3 * t);
    CHECK(w6 == static_cast<int>(p.faces.size()) - 3 * t);
    // three boundaries of three different colors, each with d qubits
    std::set<int> colors{p.boundary_colors[0], p.boundary_colors[1], p.boundary_colors[2]};
    CHECK(colors.size() == 3);
    for (int side = 0; side < 3; ++side)
      CHECK(static_cast<int>(p.region.side_qubits(side).size()) == p.d);
  }
  CHECK_THROWS(build_color_patch(0));
}

TEST_CASE("color patch distance is 2t+1 (exhaustive for t <= 2)") {
  for (int t = 1; t <= 2; ++t) {
    const ColorCodePatch p = build_color_patch(t);
    // both types see the same faces, so one computation covers X and Z
    CHECK(min_logical_weight(p.faces, p.qubits, 2 * t + 1) == 2 * t + 1);
  }
}

TEST_CASE("down patches mirror the up geometry") {
  const ColorTilingParams params{2};
  const ColorTriangle down = slot_region(params, 0, 0, false);
  const ColorCodePatch p = build_color_patch_at(2, down);
  CHECK(p.qubits.size() == 19);
  CHECK(p.faces.size() == 9);
  std::set<int> colors{p.boundary_colors[0], p.boundary_colors[1], p.boundary_colors[2]};
  CHECK(colors.size() == 3);
}

TEST_CASE("rotated surface patch counts") {
  const SurfaceCodePatch p = build_rotated_surface_patch(3);
  CHECK(p.qubit_cols * p.qubit_rows == 9);
  int x = 0, z = 0;
  for (const auto& f : p.faces) (f.x_type ? x : z)++;
  CHECK(x == 4);
  CHECK(z == 4);
  CHECK_THROWS(build_rotated_surface_patch(2));
  CHECK_THROWS(build_folded_surface_patch(4));
}

TEST_CASE("folded patch pairing is an involution mapping X to Z") {
  for (int d : {3, 5}) {
    const SurfaceCodePatch p = build_folded_surface_patch(d);
    CHECK(p.variant == SurfaceVariant::Folded);
    // qubit pairing: (c, r) <-> (d-1-c, r), middle column fixed
    std::set<int> seen;
    for (auto [a, b] : p.fold_qubit_pairs) {
      CHECK(a != b);
      CHECK(seen.insert(a).second);
      CHECK(seen.insert(b).second);
      CHECK(a % d + b % d == d - 1);
      CHECK(a / d == b / d);
    }
    CHECK(seen.size() == static_cast<size_t>(d) * (d - 1));  // all off-axis qubits
    // face pairing: involution, opposite types
    std::set<int> fseen;
    for (auto [i, j] : p.fold_face_pairs) {
      CHECK(fseen.insert(i).second);
      CHECK(fseen.insert(j).second);
      CHECK(p.faces[i].x_type != p.faces[j].x_type);
      CHECK(p.faces[i].fj == p.faces[j].fj);
      CHECK(p.faces[i].fi == d - 2 - p.faces[j].fi);
    }
    // every full (weight-4) face is paired
    for (size_t i = 0; i < p.faces.size(); ++i)
      if (p.faces[i].support.size() == 4) CHECK(fseen.count(static_cast<int>(i)));
  }
}

TEST_CASE("substrate regions are pairwise disjoint") {
  for (int d : {3, 5}) {
    const ColorSubstrate sub =
        build_color_substrate(LayoutKind::Pair, Extent{3, 3}, d, FactoryConfig{2, 1});
    std::set<Site> seen;
    for (int v = 0; v < sub.graph.num_vertices(); ++v)
      for (const Site& s : sub.regions[v].qubit_sites()) CHECK(seen.insert(s).second);
    for (const auto& itf : sub.interfaces)
      for (const Site& s : itf.corridor) CHECK(seen.insert(s).second);
  }
}

TEST_CASE("pair layout with two d=3 data patches gives disjoint 7-qubit triangles") {
  const ColorSubstrate sub =
      build_color_substrate(LayoutKind::Pair, Extent{2, 2}, 3, FactoryConfig{0, 1});
  std::vector<int> data = sub.graph.data_vertices;
  REQUIRE(data.size() >= 2);
  std::set<Site> a(sub.regions[data[0]].qubit_sites().begin(),
                   sub.regions[data[0]].qubit_sites().end());
  std::set<Site> b(sub.regions[data[1]].qubit_sites().begin(),
                   sub.regions[data[1]].qubit_sites().end());
  CHECK(a.size() == 7);
  CHECK(b.size() == 7);
  for (const Site& s : b) CHECK(!a.count(s));
}

TEST_CASE("incompatible substrate configurations are rejected") {
  CHECK_THROWS_AS(build_routing_graph(LayoutKind::Row, Extent{4, 4}, SubstrateKind::Surface,
                                      FactoryConfig{0, 1}),
                  RoutingError);
  CHECK_THROWS(build_color_substrate(LayoutKind::Row, Extent{3, 2}, 4, FactoryConfig{0, 1}));
  CHECK_THROWS(build_color_substrate(LayoutKind::Row, Extent{3, 2}, 1, FactoryConfig{0, 1}));
}

TEST_CASE("substrate json dump lists regions and corridors") {
  const ColorSubstrate sub =
      build_color_substrate(LayoutKind::Row, Extent{3, 2}, 3, FactoryConfig{1, 1});
  const std::string j = substrate_to_json(sub);
  CHECK(j.find("\"regions\"") != std::string::npos);
  CHECK(j.find("\"extra_ancilla_corridors\"") != std::string::npos);
  CHECK(j.find("\"factory\"") != std::string::npos);
  CHECK(substrate_to_json(sub) == j);  // deterministic
}

#include "surgecc/substrate.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include <json.hpp>

namespace surgecc {

std::vector<Site> ColorTriangle::qubit_sites() const {
  std::vector<Site> out;
  for (int da = 0; da <= n; ++da)
    for (int db = 0; db + da <= n; ++db) {
      const Site s = up ? Site{anchor.a + da, anchor.b + db} : Site{anchor.a - da, anchor.b - db};
      if (!is_hole(s)) out.push_back(s);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Site> ColorTriangle::hole_sites() const {
  std::vector<Site> out;
  for (int da = 0; da <= n; ++da)
    for (int db = 0; db + da <= n; ++db) {
      const Site s = up ? Site{anchor.a + da, anchor.b + db} : Site{anchor.a - da, anchor.b - db};
      if (is_hole(s)) out.push_back(s);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Site> ColorTriangle::side_qubits(int side) const {
  std::vector<Site> out;
  for (const Site& s : qubit_sites()) {
    bool on;
    switch (side) {
      case 0:  // horizontal side
        on = s.b == anchor.b;
        break;
      case 1:  // a = const side
        on = s.a == anchor.a;
        break;
      case 2:  // diagonal side
        on = s.a + s.b == anchor.a + anchor.b + (up ? n : -n);
        break;
      default:
        throw std::invalid_argument("side must be 0, 1, or 2");
    }
    if (on) out.push_back(s);
  }
  return out;
}

ColorCodePatch build_color_patch_at(int t, ColorTriangle region) {
  if (t < 1) throw std::invalid_argument("color patch requires t >= 1");
  ColorCodePatch p;
  p.t = t;
  p.d = 2 * t + 1;
  p.region = region;
  p.qubits = region.qubit_sites();
  std::set<Site> qset(p.qubits.begin(), p.qubits.end());
  for (const Site& h : region.hole_sites()) {
    ColorCodePatch::Face f;
    f.hole = h;
    f.color = face_color(h);
    for (const Site& nb : site_neighbors(h))
      if (qset.count(nb)) f.support.push_back(nb);
    std::sort(f.support.begin(), f.support.end());
    p.faces.push_back(std::move(f));
  }
  // Boundary colors: the color of the face family just outside each side.
  const Site& a = region.anchor;
  if (region.up) {
    p.boundary_colors[0] = positive_mod(a.b + 1, 3);
    p.boundary_colors[1] = positive_mod(a.a - 1, 3);
    p.boundary_colors[2] = positive_mod(2 * (a.a + a.b + region.n), 3);
  } else {
    p.boundary_colors[0] = positive_mod(a.b, 3);
    p.boundary_colors[1] = positive_mod(a.a + 1, 3);
    p.boundary_colors[2] = positive_mod(2 * (a.a + a.b - region.n) + 2, 3);
  }
  return p;
}

ColorCodePatch build_color_patch(int t) {
  if (t < 1) throw std::invalid_argument("color patch requires t >= 1");
  return build_color_patch_at(t, ColorTriangle{{0, 0}, true, 3 * t});
}

ColorTriangle slot_region(const ColorTilingParams& p, int i, int j, bool up) {
  const Site U = p.up_step_i();
  const Site V = p.up_step_j();
  const Site origin{i * U.a + j * V.a, i * U.b + j * V.b};
  if (up) return ColorTriangle{origin, true, p.n()};
  const Site D = p.down_offset();
  return ColorTriangle{{origin.a + D.a, origin.b + D.b}, false, p.n()};
}

namespace {

// Line on the lattice: a = c, b = c, or a + b = c.
struct Line {
  enum Kind { ConstA, ConstB, Sum } kind;
  int c;
  bool contains(Site s) const {
    switch (kind) {
      case ConstA: return s.a == c;
      case ConstB: return s.b == c;
      case Sum: return s.a + s.b == c;
    }
    return false;
  }
};

}  // namespace

Interface build_interface(const ColorTilingParams& p, const RoutingGraph& g, int va, int vb) {
  // Normalize: va = up slot, vb = down slot.
  if (!g.is_up(va)) std::swap(va, vb);
  if (!g.is_up(va) || g.is_up(vb)) throw RoutingError("interface endpoints must differ in orientation");
  const int ui = g.slot_i(va), uj = g.slot_j(va);
  const int di = g.slot_i(vb), dj = g.slot_j(vb);
  const ColorTriangle up_region = slot_region(p, ui, uj, true);
  const ColorTriangle down_region = slot_region(p, di, dj, false);

  Interface itf;
  itf.slot_a = va;
  itf.slot_b = vb;
  Line line{Line::Sum, 0};
  if (ui == di && uj == dj) {
    // diagonal interface between the cell's own up and down triangles
    line = {Line::Sum, up_region.anchor.a + up_region.anchor.b + p.n() + 1};
    itf.side_a = 2;
    itf.side_b = 2;
  } else if (ui == di + 1 && uj == dj) {
    // vertical interface: down's a=const side faces up's a=const side
    line = {Line::ConstA, down_region.anchor.a + 1};
    itf.side_a = 1;
    itf.side_b = 1;
  } else if (ui == di && uj == dj + 1) {
    // horizontal interface: down's top row faces up's bottom row
    line = {Line::ConstB, down_region.anchor.b + 1};
    itf.side_a = 0;
    itf.side_b = 0;
  } else {
    throw RoutingError("slots are not adjacent");
  }

  std::set<Site> corridor;
  auto collect_walls = [&](const ColorTriangle& region, std::vector<Site>& walls) {
    for (const Site& h : region.hole_sites()) {
      bool touches = false;
      for (const Site& nb : site_neighbors(h)) {
        if (!line.contains(nb)) continue;
        touches = true;
        if (!is_hole(nb)) corridor.insert(nb);
      }
      if (touches) walls.push_back(h);
    }
  };
  collect_walls(up_region, itf.wall_holes_a);
  collect_walls(down_region, itf.wall_holes_b);
  itf.corridor.assign(corridor.begin(), corridor.end());

  std::set<Site> choles;
  for (const Site& s : itf.corridor)
    for (const Site& nb : site_neighbors(s))
      if (line.contains(nb) && is_hole(nb)) choles.insert(nb);
  itf.corridor_holes.assign(choles.begin(), choles.end());
  return itf;
}

const Interface& ColorSubstrate::interface_between(int va, int vb) const {
  auto key = std::minmax(va, vb);
  auto it = interface_index.find({key.first, key.second});
  if (it == interface_index.end()) throw RoutingError("no interface between slots");
  return interfaces[it->second];
}

ColorSubstrate build_color_substrate(LayoutKind layout, Extent extent, int distance,
                                     const FactoryConfig& factories) {
  if (distance < 3 || distance % 2 == 0)
    throw std::invalid_argument("distance must be odd and >= 3");
  ColorSubstrate sub;
  sub.params.t = (distance - 1) / 2;
  sub.graph = build_routing_graph(layout, extent, SubstrateKind::Color, factories);
  const int nv = sub.graph.num_vertices();
  sub.regions.reserve(nv);
  for (int v = 0; v < nv; ++v)
    sub.regions.push_back(
        slot_region(sub.params, sub.graph.slot_i(v), sub.graph.slot_j(v), sub.graph.is_up(v)));
  for (int v = 0; v < nv; ++v)
    for (const auto& nb : sub.graph.adj[v]) {
      if (nb.v < v) continue;
      sub.interface_index[{v, nb.v}] = static_cast<int>(sub.interfaces.size());
      sub.interfaces.push_back(build_interface(sub.params, sub.graph, v, nb.v));
    }
  return sub;
}

SurfaceCodePatch build_rotated_surface_patch(int d) {
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("distance must be odd and >= 3");
  SurfaceCodePatch p;
  p.d = d;
  p.variant = SurfaceVariant::Rotated;
  p.qubit_cols = d;
  p.qubit_rows = d;
  auto qubit = [&](int c, int r) { return r * d + c; };
  for (int fi = -1; fi < d; ++fi)
    for (int fj = -1; fj < d; ++fj) {
      std::vector<int> support;
      for (int dc = 0; dc <= 1; ++dc)
        for (int dr = 0; dr <= 1; ++dr) {
          const int c = fi + dc, r = fj + dr;
          if (c >= 0 && c < d && r >= 0 && r < d) support.push_back(qubit(c, r));
        }
      const bool z_type = positive_mod(fi + fj, 2) == 0;
      if (support.size() == 4) {
        p.faces.push_back({!z_type, std::move(support), fi, fj});
      } else if (support.size() == 2) {
        // Boundary halves: X on top/bottom, Z on left/right.
        const bool horizontal_edge = fj == -1 || fj == d - 1;
        if (horizontal_edge && !z_type) p.faces.push_back({true, std::move(support), fi, fj});
        if (!horizontal_edge && z_type) p.faces.push_back({false, std::move(support), fi, fj});
      }
    }
  return p;
}

SurfaceCodePatch build_folded_surface_patch(int d) {
  SurfaceCodePatch p = build_rotated_surface_patch(d);
  p.variant = SurfaceVariant::Folded;
  // Fold across the middle column (the diagonal of the diamond-drawn code):
  // qubit (c, r) stacks onto (d-1-c, r).
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const int cm = d - 1 - c;
      if (c < cm) p.fold_qubit_pairs.push_back({r * d + c, r * d + cm});
    }
  // Faces (fi, fj) map to (d-2-fi, fj); the parity of fi+fj flips for odd d,
  // so paired faces have opposite check type.
  for (size_t i = 0; i < p.faces.size(); ++i)
    for (size_t j = i + 1; j < p.faces.size(); ++j)
      if (p.faces[j].fi == p.d - 2 - p.faces[i].fi && p.faces[j].fj == p.faces[i].fj)
        p.fold_face_pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
  return p;
}

std::string substrate_to_json(const ColorSubstrate& sub) {
  nlohmann::json j;
  j["substrate"] = "color";
  j["distance"] = 2 * sub.params.t + 1;
  j["extent"] = {sub.graph.extent.cols, sub.graph.extent.rows};
  auto site_json = [](const Site& s) { return nlohmann::json{s.a, s.b}; };
  nlohmann::json regions = nlohmann::json::array();
  for (int v = 0; v < sub.graph.num_vertices(); ++v) {
    nlohmann::json r;
    r["slot"] = sub.graph.vertex_name(v);
    switch (sub.graph.type[v]) {
      case VertexType::Data: r["role"] = "data"; break;
      case VertexType::Ancilla: r["role"] = "ancilla"; break;
      case VertexType::Factory: r["role"] = "factory"; break;
    }
    nlohmann::json verts = nlohmann::json::array();
    for (const Site& s : sub.regions[v].qubit_sites()) verts.push_back(site_json(s));
    r["vertices"] = std::move(verts);
    nlohmann::json faces = nlohmann::json::array();
    for (const Site& h : sub.regions[v].hole_sites()) {
      nlohmann::json f;
      f["center"] = site_json(h);
      f["color"] = face_color(h);
      f["types"] = {"X", "Z"};
      faces.push_back(std::move(f));
    }
    r["faces"] = std::move(faces);
    regions.push_back(std::move(r));
  }
  j["regions"] = std::move(regions);
  nlohmann::json corridors = nlohmann::json::array();
  for (const auto& itf : sub.interfaces) {
    nlohmann::json c;
    c["between"] = {sub.graph.vertex_name(itf.slot_a), sub.graph.vertex_name(itf.slot_b)};
    nlohmann::json verts = nlohmann::json::array();
    for (const Site& s : itf.corridor) verts.push_back(site_json(s));
    c["vertices"] = std::move(verts);
    corridors.push_back(std::move(c));
  }
  j["extra_ancilla_corridors"] = std::move(corridors);
  return j.dump(2);
}

}  // namespace surgecc

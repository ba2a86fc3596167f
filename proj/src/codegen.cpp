#include "surgecc/codegen.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

#include <omp.h>

#include "surgecc/rng.hpp"

namespace surgecc {

std::vector<int> MergeSpec::path() const {
  std::vector<int> p{left_slot};
  p.insert(p.end(), snake.begin(), snake.end());
  p.push_back(right_slot);
  return p;
}

void MergeSpec::validate() const {
  if (!substrate) throw std::invalid_argument("merge spec has no substrate");
  if (snake.empty())
    throw std::invalid_argument("a merge needs at least one snake patch between the endpoints");
  const auto p = path();
  const RoutingGraph& g = substrate->graph;
  std::set<int> seen;
  for (int v : p) {
    if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("merge slot out of range");
    if (!seen.insert(v).second) throw std::invalid_argument("merge path revisits a slot");
  }
  for (size_t k = 0; k + 1 < p.size(); ++k) {
    bool adjacent = false;
    for (const auto& nb : g.adj[p[k]])
      if (nb.v == p[k + 1]) adjacent = true;
    if (!adjacent) throw std::invalid_argument("merge path slots are not adjacent");
  }
  if (logical_ancilla_slot >= 0 &&
      std::find(snake.begin(), snake.end(), logical_ancilla_slot) == snake.end())
    throw std::invalid_argument("logical ancilla slot must lie on the snake");
}

int MergeGeometry::qubit(Site s) const {
  auto it = index.find(s);
  if (it == index.end()) throw std::invalid_argument("site is not a qubit of the merge");
  return it->second;
}

MergeGeometry build_merge_geometry(const MergeSpec& spec) {
  spec.validate();
  const ColorSubstrate& sub = *spec.substrate;
  MergeGeometry geom;
  geom.path = spec.path();
  std::set<Site> sites;
  for (int v : geom.path)
    for (const Site& s : sub.regions[v].qubit_sites()) sites.insert(s);
  for (size_t k = 0; k + 1 < geom.path.size(); ++k) {
    const Interface& itf = sub.interface_between(geom.path[k], geom.path[k + 1]);
    geom.interfaces.push_back(&itf);
    for (const Site& s : itf.corridor) sites.insert(s);
  }
  geom.qubits.assign(sites.begin(), sites.end());
  for (size_t i = 0; i < geom.qubits.size(); ++i) geom.index[geom.qubits[i]] = static_cast<int>(i);

  // Inner boundaries: the sides of the end patches facing their first
  // interface carry the logical representatives measured by the merge.
  auto inner_side = [&](int slot, const Interface& itf) {
    const int side = itf.slot_a == slot ? itf.side_a : itf.side_b;
    std::vector<int> qs;
    for (const Site& s : sub.regions[slot].side_qubits(side)) qs.push_back(geom.qubit(s));
    std::sort(qs.begin(), qs.end());
    return qs;
  };
  geom.left_inner = inner_side(spec.left_slot, *geom.interfaces.front());
  geom.right_inner = inner_side(spec.right_slot, *geom.interfaces.back());
  return geom;
}

namespace {

PauliOp typed_op(size_t n, const std::vector<int>& support, bool z_type) {
  PauliOp p(n);
  for (int q : support)
    if (z_type)
      p.z.set(q);
    else
      p.x.set(q);
  return p;
}

std::vector<int> trimmed_support(const MergeGeometry& geom, Site hole) {
  std::vector<int> out;
  for (const Site& nb : site_neighbors(hole)) {
    auto it = geom.index.find(nb);
    if (it != geom.index.end()) out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<TaggedOp> build_split_stabilizers(const MergeSpec& spec) {
  const MergeGeometry geom = build_merge_geometry(spec);
  const ColorSubstrate& sub = *spec.substrate;
  const size_t n = geom.qubits.size();
  const bool zz = spec.basis == MergeBasis::ZZ;
  std::vector<TaggedOp> out;
  for (int v : geom.path) {
    const std::vector<Site> patch_sites = sub.regions[v].qubit_sites();
    const std::set<Site> patch(patch_sites.begin(), patch_sites.end());
    for (const Site& h : sub.regions[v].hole_sites()) {
      std::vector<int> support;
      for (const Site& nb : site_neighbors(h))
        if (patch.count(nb)) support.push_back(geom.qubit(nb));
      std::sort(support.begin(), support.end());
      out.push_back({typed_op(n, support, false), GenKind::PatchFace, false, v, h});
      out.push_back({typed_op(n, support, true), GenKind::PatchFace, zz, v, h});
    }
  }
  // Corridor qubits wait in |+> for a ZZ merge (|0> for XX).
  for (const Interface* itf : geom.interfaces)
    for (const Site& s : itf->corridor)
      out.push_back({typed_op(n, {geom.qubit(s)}, !zz), GenKind::AncillaInit, false, -1, s});
  return out;
}

std::vector<TaggedOp> build_merged_stabilizers(const MergeSpec& spec) {
  const MergeGeometry geom = build_merge_geometry(spec);
  const ColorSubstrate& sub = *spec.substrate;
  const size_t n = geom.qubits.size();
  const bool zz = spec.basis == MergeBasis::ZZ;
  std::vector<TaggedOp> out;
  // Patch faces, trimmed to the merged region: faces on a domain wall extend
  // across their corridor, in both Pauli types (the extended cross-wall face
  // of the non-merge type is exactly the paper's completion of the boundary
  // checks that anticommute with the new plaquettes).
  for (int v : geom.path)
    for (const Site& h : sub.regions[v].hole_sites()) {
      const auto support = trimmed_support(geom, h);
      out.push_back({typed_op(n, support, !zz), GenKind::PatchFace, false, v, h});
      out.push_back({typed_op(n, support, zz), GenKind::PatchFace, true, v, h});
    }
  for (const Interface* itf : geom.interfaces) {
    std::set<Site> corridor(itf->corridor.begin(), itf->corridor.end());
    // Faces centered on the corridor line exist only in the merge-basis type;
    // the other type cannot cross the semitransparent wall.
    for (const Site& h : itf->corridor_holes) {
      const auto support = trimmed_support(geom, h);
      if (support.size() < 2) continue;
      out.push_back({typed_op(n, support, zz), GenKind::CorridorFace, true, -1, h});
    }
    // One corridor domino per wall face: the pair of corridor qubits its
    // extension gained. Extension * domino recovers the original patch face.
    // Facing wall faces of the two patches share their pair; emit it once.
    std::set<std::vector<int>> seen_pairs;
    auto add_dominoes = [&](const std::vector<Site>& walls) {
      for (const Site& h : walls) {
        std::vector<int> pair;
        for (const Site& nb : site_neighbors(h))
          if (corridor.count(nb)) pair.push_back(geom.qubit(nb));
        if (pair.size() != 2) throw std::logic_error("wall face did not gain a corridor pair");
        std::sort(pair.begin(), pair.end());
        if (!seen_pairs.insert(pair).second) continue;
        out.push_back({typed_op(n, pair, zz), GenKind::Domino, true, -1, h});
      }
    };
    add_dominoes(itf->wall_holes_a);
    add_dominoes(itf->wall_holes_b);
  }
  return out;
}

PauliOp merge_target_logical(const MergeSpec& spec) {
  const MergeGeometry geom = build_merge_geometry(spec);
  std::vector<int> support = geom.left_inner;
  support.insert(support.end(), geom.right_inner.begin(), geom.right_inner.end());
  return typed_op(geom.qubits.size(), support, spec.basis == MergeBasis::ZZ);
}

MergeInstance build_color_merge(const MergeSpec& spec) {
  MergeInstance inst;
  inst.geom = build_merge_geometry(spec);
  inst.split = build_split_stabilizers(spec);
  inst.merged = build_merged_stabilizers(spec);
  inst.target = merge_target_logical(spec);
  inst.basis = spec.basis;
  return inst;
}

// ---------------------------------------------------------------------------
// Surface-code merge: a horizontal chain of rotated patches rough-merged
// through one-column seams. For an XX merge the checkerboard convention is
// mirrored so that the same chain joins the X-type boundaries instead.
// ---------------------------------------------------------------------------

MergeInstance build_surface_merge(int distance, int snake_patches, MergeBasis basis,
                                  bool right_folded) {
  if (distance < 3 || distance % 2 == 0)
    throw std::invalid_argument("distance must be odd and >= 3");
  if (snake_patches < 1) throw std::invalid_argument("the snake needs at least one patch");
  const int d = distance;
  const int npatch = snake_patches + 2;
  const int cols = npatch * d + (npatch - 1);
  const size_t n = static_cast<size_t>(cols) * d;
  const bool zz = basis == MergeBasis::ZZ;
  auto qubit = [&](int c, int r) { return r * cols + c; };
  // Merge-basis faces sit on even parity cells for ZZ, odd for XX.
  auto merge_face = [&](int fi, int fj) { return positive_mod(fi + fj, 2) == (zz ? 0 : 1); };

  MergeInstance inst;
  inst.basis = basis;
  MergeGeometry& geom = inst.geom;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < cols; ++c) {
      geom.qubits.push_back({c, r});
      geom.index[{c, r}] = qubit(c, r);
    }

  auto faces_for = [&](int c0, int c1, std::vector<TaggedOp>& out, GenKind kind, int slot) {
    // Rotated-code face set of the column range [c0, c1): full faces plus
    // merge-type halves on the horizontal edges and conjugate-type halves on
    // the vertical edges. The merge-type logical then runs vertically and
    // terminates on the seam-facing boundaries, which is what lets the seam
    // checks telescope to the joint logical.
    for (int fi = c0 - 1; fi < c1; ++fi)
      for (int fj = -1; fj < d; ++fj) {
        std::vector<int> support;
        for (int dc = 0; dc <= 1; ++dc)
          for (int dr = 0; dr <= 1; ++dr) {
            const int c = fi + dc, r = fj + dr;
            if (c >= c0 && c < c1 && r >= 0 && r < d) support.push_back(qubit(c, r));
          }
        const bool mt = merge_face(fi, fj);
        if (support.size() == 4) {
          out.push_back({typed_op(n, support, mt == zz), kind, mt, slot, Site{fi, fj}});
        } else if (support.size() == 2) {
          const bool vertical_edge = fi == c0 - 1 || fi == c1 - 1;
          if (!vertical_edge && mt)
            out.push_back({typed_op(n, support, zz), kind, true, slot, Site{fi, fj}});
          if (vertical_edge && !mt)
            out.push_back({typed_op(n, support, !zz), kind, false, slot, Site{fi, fj}});
        }
      }
  };

  // Split: each patch is its own rotated code.
  for (int p = 0; p < npatch; ++p) faces_for(p * (d + 1), p * (d + 1) + d, inst.split, GenKind::PatchFace, p);

  // Merged: one rotated code over the whole chain. Unlike the color-code
  // STDW, the seam qubits are ordinary bulk qubits of the merged patch (the
  // staggered checks of the other type run across the seam), so there are no
  // frozen corridor pairs; faces touching a seam column are tagged as the
  // new domain-wall checks.
  faces_for(0, cols, inst.merged, GenKind::PatchFace, -1);
  std::set<int> seam_cols;
  for (int p = 0; p + 1 < npatch; ++p) seam_cols.insert(p * (d + 1) + d);
  std::vector<int> merge_coverage(n, 0);
  for (auto& gen : inst.merged) {
    const BitVec& support = gen.op.x.any() ? gen.op.x : gen.op.z;
    bool on_seam = false;
    for (size_t q : support.set_bits())
      if (seam_cols.count(static_cast<int>(q) % cols)) {
        on_seam = true;
        if (gen.merge_type) ++merge_coverage[q];
      }
    if (on_seam) gen.kind = GenKind::CorridorFace;
  }

  // Seam initialization: the staggered merge-type checks cover most seam
  // qubits twice but leave an alternating residue; residue qubits start in
  // the merge-basis eigenstate so their known values close the telescoping
  // product of the measurement subset. The rest start in the conjugate basis.
  for (int s : seam_cols)
    for (int r = 0; r < d; ++r) {
      const int q = qubit(s, r);
      const bool merge_basis_init = merge_coverage[q] % 2 == 1;
      inst.split.push_back(
          {typed_op(n, {q}, merge_basis_init == zz), GenKind::AncillaInit, false, -1, Site{s, r}});
    }

  // Logical representatives: the merge-type strings run vertically and the
  // inner-boundary representatives are the seam-facing columns of the two
  // end patches.
  std::vector<int> support;
  const int right_c0 = (npatch - 1) * (d + 1);
  for (int r = 0; r < d; ++r) support.push_back(qubit(d - 1, r));
  for (int r = 0; r < d; ++r) support.push_back(qubit(right_c0, r));
  inst.target = typed_op(n, support, zz);
  geom.left_inner.assign(support.begin(), support.begin() + d);
  geom.right_inner.assign(support.begin() + d, support.end());
  (void)right_folded;  // the fold is a layout property; stabilizers unchanged
  return inst;
}

// ---------------------------------------------------------------------------
// Subsystem code.
// ---------------------------------------------------------------------------

bool SubsystemCodeSpec::in_gauge_group(const PauliOp& p) const {
  return gf2_in_span(gauge_rref, gauge_pivots, p.symplectic());
}

size_t SubsystemCodeSpec::gauge_pair_count() const {
  return (gauge_rref.size() - stab_rref.size()) / 2;
}

size_t SubsystemCodeSpec::logical_count() const {
  return n - stab_rref.size() - gauge_pair_count();
}

SubsystemCodeSpec build_subsystem_code(const std::vector<PauliOp>& split,
                                       const std::vector<PauliOp>& merged) {
  if (split.empty() || merged.empty()) throw std::invalid_argument("empty generator list");
  if (!all_pairwise_commute(split) || !all_pairwise_commute(merged))
    throw std::invalid_argument("generator lists must be internally commuting");
  SubsystemCodeSpec code;
  code.n = split.front().num_qubits();
  code.split = split;
  code.merged = merged;

  // S = span(split) ^ span(merged), as row spaces of symplectic vectors.
  const auto split_rows = symplectic_rows(split);
  const auto merged_rows = symplectic_rows(merged);
  for (const BitVec& v : gf2_intersect_row_spaces(split_rows, merged_rows))
    code.stabilizers.push_back(PauliOp::from_symplectic(v));
  code.stab_rref = symplectic_rows(code.stabilizers);
  code.stab_pivots = gf2_rref(code.stab_rref);

  // I: merged generators outside S that anticommute with something on the
  // split side.
  for (size_t i = 0; i < merged.size(); ++i) {
    if (gf2_in_span(code.stab_rref, code.stab_pivots, merged[i].symplectic())) continue;
    bool anti = false;
    for (const auto& s : split)
      if (!merged[i].commutes_with(s)) {
        anti = true;
        break;
      }
    if (anti) code.intermediary.push_back(i);
  }

  // Conjugate partners: for each element of I, a string of the opposite type
  // commuting with S and pairing with exactly that element.
  const size_t m = code.intermediary.size();
  for (size_t j = 0; j < m; ++j) {
    const PauliOp& ij = merged[code.intermediary[j]];
    const bool partner_is_x = ij.x.count() == 0;  // Z-type plaquette -> X string
    std::vector<BitVec> constraints;
    std::vector<bool> rhs;
    for (const auto& s : code.stabilizers) {
      constraints.push_back(partner_is_x ? s.z : s.x);
      rhs.push_back(false);
    }
    for (size_t k = 0; k < m; ++k) {
      const PauliOp& ik = merged[code.intermediary[k]];
      constraints.push_back(partner_is_x ? ik.z : ik.x);
      rhs.push_back(k == j);
    }
    auto sol = gf2_solve_system(constraints, rhs, code.n);
    if (!sol) {
      // Fall back to pairing with element j only.
      constraints.resize(code.stabilizers.size() + 1);
      rhs.assign(code.stabilizers.size(), false);
      constraints.back() = partner_is_x ? ij.z : ij.x;
      rhs.push_back(true);
      sol = gf2_solve_system(constraints, rhs, code.n);
      if (!sol) throw std::logic_error("no conjugate partner exists; malformed merge");
    }
    PauliOp partner(code.n);
    (partner_is_x ? partner.x : partner.z) = *sol;
    code.conjugate_partners.push_back(std::move(partner));
  }

  // Gauge group G = <split, merged, partners>; L_g presented as the gauge
  // generators independent modulo S.
  code.gauge_rref = code.stab_rref;
  code.gauge_pivots = code.stab_pivots;
  auto try_add = [&](const PauliOp& p, bool record) {
    BitVec red = gf2_reduce(code.gauge_rref, code.gauge_pivots, p.symplectic());
    if (!red.any()) return;
    const size_t pivot = red.lowest_set();
    // keep rref shape: eliminate the new pivot from existing rows
    for (auto& row : code.gauge_rref)
      if (row.get(pivot)) row ^= red;
    size_t pos = 0;
    while (pos < code.gauge_pivots.size() && code.gauge_pivots[pos] < pivot) ++pos;
    code.gauge_rref.insert(code.gauge_rref.begin() + pos, red);
    code.gauge_pivots.insert(code.gauge_pivots.begin() + pos, pivot);
    if (record) code.gauge_generators.push_back(p);
  };
  for (const auto& p : split) try_add(p, true);
  for (const auto& p : merged) try_add(p, true);
  for (const auto& p : code.conjugate_partners) try_add(p, true);

  // Bare logicals: centralizer of G modulo G.
  std::vector<BitVec> omega_rows;
  for (const BitVec& row : code.gauge_rref) {
    const PauliOp g = PauliOp::from_symplectic(row);
    BitVec c(2 * code.n);
    for (size_t i : g.z.set_bits()) c.set(i);
    for (size_t i : g.x.set_bits()) c.set(code.n + i);
    omega_rows.push_back(std::move(c));
  }
  std::vector<BitVec> central = gf2_nullspace(std::move(omega_rows), 2 * code.n);
  std::vector<BitVec> quot_rref = code.gauge_rref;
  std::vector<size_t> quot_piv = code.gauge_pivots;
  for (const BitVec& v : central) {
    BitVec red = gf2_reduce(quot_rref, quot_piv, v);
    if (!red.any()) continue;
    code.bare_logicals.push_back(PauliOp::from_symplectic(red));
    const size_t pivot = red.lowest_set();
    for (auto& row : quot_rref)
      if (row.get(pivot)) row ^= red;
    size_t pos = 0;
    while (pos < quot_piv.size() && quot_piv[pos] < pivot) ++pos;
    quot_rref.insert(quot_rref.begin() + pos, red);
    quot_piv.insert(quot_piv.begin() + pos, pivot);
  }
  return code;
}

SubsystemCodeSpec build_subsystem_code(const MergeInstance& inst) {
  std::vector<PauliOp> split, merged;
  for (const auto& t : inst.split) split.push_back(t.op);
  for (const auto& t : inst.merged) merged.push_back(t.op);
  return build_subsystem_code(split, merged);
}

std::vector<PauliOp> gauge_fix(const SubsystemCodeSpec& code, GaugeFixDirection direction) {
  // Measurement list: the intermediary plaquettes for a merge; the weight-1
  // ancilla re-initialization stabilizers of the split configuration for a
  // split.
  std::vector<PauliOp> measured;
  if (direction == GaugeFixDirection::Merge) {
    for (size_t i : code.intermediary) measured.push_back(code.merged[i]);
  } else {
    for (const auto& p : code.split)
      if (p.weight() == 1) measured.push_back(p);
  }
  // Measuring the target gauge operators and updating by the Gottesman-Knill
  // rules leaves the group generated by S and the measured set, plus the
  // logical correlation fixed by the previous configuration (after a split,
  // the state still remembers the merged Z_L Z_L value). The correlation is
  // state information, not a check of the deformed code, so the returned
  // group is exactly <S, measured>.
  std::vector<PauliOp> group = measured;
  group.insert(group.end(), code.stabilizers.begin(), code.stabilizers.end());
  return group;
}

MeasurementSubset select_measurement_subset(const MergeInstance& inst) {
  const size_t n = inst.geom.qubits.size();
  const bool zz = inst.basis == MergeBasis::ZZ;
  auto support_of = [&](const PauliOp& p) -> const BitVec& { return zz ? p.z : p.x; };

  std::vector<size_t> basis_gens;
  for (size_t i = 0; i < inst.merged.size(); ++i)
    if (inst.merged[i].merge_type) basis_gens.push_back(i);

  // Seed: the pure domain-wall operators (corridor faces and dominoes).
  std::set<size_t> m_set;
  BitVec acc(n);
  for (size_t i : basis_gens)
    if (inst.merged[i].kind == GenKind::CorridorFace || inst.merged[i].kind == GenKind::Domino) {
      m_set.insert(i);
      acc ^= support_of(inst.merged[i].op);
    }
  MeasurementSubset m;
  m.target = inst.target;
  BitVec residual = acc;
  residual ^= support_of(inst.target);
  if (residual.any()) {
    // Complete the seed with a subset of the remaining merge-type faces.
    std::vector<BitVec> rows;
    for (size_t i : basis_gens) rows.push_back(support_of(inst.merged[i].op));
    auto subset = gf2_solve_subset(rows, residual);
    if (!subset) {
      // The straight-row representative may not terminate cleanly on the
      // merged boundary structure (this happens for the checkerboard seams
      // of the surface substrate). Deform it by split stabilizers of the
      // merge type: the deformed operator is the same logical on the split
      // patches and the deformation values are all known.
      std::vector<size_t> split_idx;
      for (size_t i = 0; i < inst.split.size(); ++i)
        if (inst.split[i].merge_type) {
          split_idx.push_back(i);
          rows.push_back(support_of(inst.split[i].op));
        }
      subset = gf2_solve_subset(rows, residual);
      if (!subset)
        throw std::logic_error(
            "no measurement subset reproduces the joint logical; invalid snake geometry");
      // Move the split part of the solution into the target.
      std::vector<size_t> kept;
      for (size_t k : *subset) {
        if (k < basis_gens.size()) {
          kept.push_back(k);
        } else {
          const auto& sup = support_of(inst.split[split_idx[k - basis_gens.size()]].op);
          (inst.basis == MergeBasis::ZZ ? m.target.z : m.target.x) ^= sup;
        }
      }
      *subset = std::move(kept);
    }
    for (size_t k : *subset) {
      const size_t idx = basis_gens[k];
      if (m_set.count(idx))
        m_set.erase(idx);
      else
        m_set.insert(idx);
    }
  }
  m.indices.assign(m_set.begin(), m_set.end());
  // Support equality is the defining property; fail loudly if violated.
  BitVec check(n);
  for (size_t i : m.indices) check ^= support_of(inst.merged[i].op);
  if (!(check == support_of(m.target)))
    throw std::logic_error("measurement subset product does not match the target logical");
  return m;
}

// ---------------------------------------------------------------------------
// Distance search.
// ---------------------------------------------------------------------------

namespace {

struct SyndromeKey {
  std::vector<uint64_t> words;
  bool operator==(const SyndromeKey& o) const { return words == o.words; }
};

struct SyndromeHash {
  size_t operator()(const SyndromeKey& k) const {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (uint64_t w : k.words) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      uint64_t x = h;
      h = Rng::splitmix64(x);
    }
    return static_cast<size_t>(h);
  }
};

SyndromeKey syndrome_of(const PauliOp& p, const std::vector<PauliOp>& stabs) {
  SyndromeKey key;
  key.words.assign((stabs.size() + 63) / 64, 0);
  for (size_t i = 0; i < stabs.size(); ++i)
    if (!p.commutes_with(stabs[i])) key.words[i >> 6] |= uint64_t{1} << (i & 63);
  return key;
}

PauliOp single(size_t n, size_t q, int type) {  // 0=X, 1=Z, 2=Y
  PauliOp p(n);
  if (type != 1) p.x.set(q);
  if (type != 0) p.z.set(q);
  return p;
}

}  // namespace

DistanceReport verify_distance(const SubsystemCodeSpec& code, int d_target,
                               long randomized_trials) {
  DistanceReport report;
  const size_t n = code.n;
  const int exhaustive_w = std::min(d_target - 1, 4);

  // Meet-in-the-middle: every Pauli of weight <= 4 is a product of two
  // Paulis of weight <= 2; two halves multiply to an S-commuting operator
  // exactly when their S-syndromes match.
  std::vector<PauliOp> half;
  half.push_back(PauliOp(n));  // identity
  for (size_t q = 0; q < n; ++q)
    for (int t = 0; t < 3; ++t) half.push_back(single(n, q, t));
  if (exhaustive_w >= 3) {
    for (size_t q1 = 0; q1 < n; ++q1)
      for (size_t q2 = q1 + 1; q2 < n; ++q2)
        for (int t1 = 0; t1 < 3; ++t1)
          for (int t2 = 0; t2 < 3; ++t2) {
            PauliOp p = single(n, q1, t1);
            p *= single(n, q2, t2);
            half.push_back(std::move(p));
          }
  }
  std::unordered_map<SyndromeKey, std::vector<uint32_t>, SyndromeHash> buckets;
  for (size_t i = 0; i < half.size(); ++i)
    buckets[syndrome_of(half[i], code.stabilizers)].push_back(static_cast<uint32_t>(i));

  int best_weight = std::numeric_limits<int>::max();
  std::optional<PauliOp> witness;
  for (const auto& [key, ids] : buckets) {
    for (size_t a = 0; a < ids.size(); ++a)
      for (size_t b = a; b < ids.size(); ++b) {
        PauliOp e = half[ids[a]];
        e *= half[ids[b]];
        const int w = static_cast<int>(e.weight());
        if (w == 0 || w > exhaustive_w || w >= best_weight) continue;
        if (code.in_gauge_group(e)) continue;
        best_weight = w;
        witness = e;
      }
  }
  report.searched_weight = exhaustive_w;
  report.exhaustive = exhaustive_w >= d_target - 1;

  if (!report.exhaustive && !witness) {
    // Randomized information-set search for heavier dressed logicals: random
    // column orders concentrate centralizer vectors on few qubits.
    std::vector<BitVec> omega_rows;
    for (const auto& s : code.stabilizers) {
      BitVec c(2 * n);
      for (size_t i : s.z.set_bits()) c.set(i);
      for (size_t i : s.x.set_bits()) c.set(n + i);
      omega_rows.push_back(std::move(c));
    }
    std::vector<BitVec> central = gf2_nullspace(std::move(omega_rows), 2 * n);
    Rng rng(0x5eed);
    std::vector<size_t> order(2 * n);
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (long trial = 0; trial < randomized_trials; ++trial) {
      rng.shuffle(order);
      std::vector<BitVec> rows = central;
      // eliminate following the shuffled column order
      size_t r = 0;
      for (size_t oc = 0; oc < order.size() && r < rows.size(); ++oc) {
        const size_t c = order[oc];
        size_t sel = BitVec::npos;
        for (size_t i = r; i < rows.size(); ++i)
          if (rows[i].get(c)) {
            sel = i;
            break;
          }
        if (sel == BitVec::npos) continue;
        std::swap(rows[r], rows[sel]);
        for (size_t i = 0; i < rows.size(); ++i)
          if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
        ++r;
      }
      for (const auto& row : rows) {
        const PauliOp e = PauliOp::from_symplectic(row);
        const int w = static_cast<int>(e.weight());
        if (w == 0 || w >= d_target || w >= best_weight) continue;
        if (code.in_gauge_group(e)) continue;
        best_weight = w;
        witness = e;
      }
    }
    report.trials = randomized_trials;
  }

  if (witness) {
    report.ok = false;
    report.witness = witness;
  } else {
    report.ok = true;
  }
  return report;
}

TypedDistanceReport min_typed_dressed_logical(const SubsystemCodeSpec& code, bool z_type,
                                              int max_weight) {
  const size_t n = code.n;
  // Per-qubit syndrome words against the opposite-type parts of S.
  const size_t words = (code.stabilizers.size() + 63) / 64;
  std::vector<uint64_t> qsyn(n * words, 0);
  for (size_t i = 0; i < code.stabilizers.size(); ++i) {
    const BitVec& v = z_type ? code.stabilizers[i].x : code.stabilizers[i].z;
    for (size_t q : v.set_bits()) qsyn[q * words + (i >> 6)] |= uint64_t{1} << (i & 63);
  }
  TypedDistanceReport rep;
  std::vector<uint64_t> acc(words);
  std::vector<size_t> support;
  // Depth-first enumeration of supports by ascending weight.
  for (int w = 1; w <= max_weight && !rep.found; ++w) {
    std::vector<size_t> idx(w);
    std::function<void(int, size_t)> rec = [&](int depth, size_t start) {
      if (rep.found) return;
      if (depth == w) {
        bool zero = true;
        for (size_t k = 0; k < words; ++k) {
          uint64_t x = 0;
          for (int a = 0; a < w; ++a) x ^= qsyn[idx[a] * words + k];
          if (x) {
            zero = false;
            break;
          }
        }
        if (!zero) return;
        PauliOp e(n);
        for (int a = 0; a < w; ++a) (z_type ? e.z : e.x).set(idx[a]);
        if (code.in_gauge_group(e)) return;
        rep.found = true;
        rep.weight = w;
        rep.witness = e;
        return;
      }
      for (size_t q = start; q < n; ++q) {
        idx[depth] = q;
        rec(depth + 1, q + 1);
      }
    };
    rec(0, 0);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Dump.
// ---------------------------------------------------------------------------

std::string stabilizer_dump(const MergeInstance& inst, const SubsystemCodeSpec& code,
                            const MeasurementSubset& m) {
  std::ostringstream out;
  out << "# qubits " << inst.geom.qubits.size() << "\n";
  out << "# sites";
  for (const Site& s : inst.geom.qubits) out << " " << s.a << "," << s.b;
  out << "\n# split-generators\n";
  for (const auto& t : inst.split) out << pauli_to_string(t.op) << "\n";
  out << "# merged-generators\n";
  for (const auto& t : inst.merged) out << pauli_to_string(t.op) << "\n";
  out << "# subsystem-code\n";
  for (const auto& p : code.stabilizers) out << pauli_to_string(p) << " S\n";
  for (const auto& p : code.gauge_generators) out << pauli_to_string(p) << " G\n";
  for (const auto& p : code.conjugate_partners) out << pauli_to_string(p) << " G\n";
  for (size_t i : code.intermediary) out << pauli_to_string(code.merged[i]) << " I\n";
  for (size_t i : m.indices) out << pauli_to_string(inst.merged[i].op) << " M\n";
  out << "# target " << pauli_to_string(m.target) << "\n";
  return out.str();
}

VerificationReport verify_merge(const MergeInstance& inst, int d_target, long randomized_trials) {
  VerificationReport rep;
  std::vector<PauliOp> split, merged;
  for (const auto& t : inst.split) split.push_back(t.op);
  for (const auto& t : inst.merged) merged.push_back(t.op);
  rep.split_commuting = all_pairwise_commute(split);
  rep.merged_commuting = all_pairwise_commute(merged);
  if (!rep.split_commuting || !rep.merged_commuting) return rep;

  const SubsystemCodeSpec code = build_subsystem_code(split, merged);
  rep.n = code.n;
  rep.stabilizer_rank = code.stab_rref.size();
  rep.gauge_pairs = code.gauge_pair_count();
  rep.logicals = code.logical_count();

  // S lies in both row spaces, and its rank matches the dimension formula
  // rk(A) + rk(B) - rk(A u B), which is an intersection check independent of
  // the Zassenhaus computation that produced S.
  auto split_rows = symplectic_rows(split);
  auto merged_rows = symplectic_rows(merged);
  auto split_rref = split_rows;
  auto split_piv = gf2_rref(split_rref);
  auto merged_rref = merged_rows;
  auto merged_piv = gf2_rref(merged_rref);
  rep.stabilizers_in_both_spans = true;
  for (const auto& s : code.stabilizers) {
    const BitVec v = s.symplectic();
    if (!gf2_in_span(split_rref, split_piv, v) || !gf2_in_span(merged_rref, merged_piv, v))
      rep.stabilizers_in_both_spans = false;
  }
  std::vector<BitVec> union_rows = split_rows;
  union_rows.insert(union_rows.end(), merged_rows.begin(), merged_rows.end());
  rep.intersection_rank_ok =
      code.stab_rref.size() == split_rref.size() + merged_rref.size() - gf2_rank(union_rows);

  rep.stabilizer_center_ok = true;
  for (const auto& s : code.stabilizers) {
    for (const auto& g : code.gauge_generators)
      if (!s.commutes_with(g)) rep.stabilizer_center_ok = false;
    for (const auto& g : code.conjugate_partners)
      if (!s.commutes_with(g)) rep.stabilizer_center_ok = false;
  }

  rep.intermediary_partners_ok = true;
  for (size_t j = 0; j < code.intermediary.size(); ++j) {
    if (code.merged[code.intermediary[j]].commutes_with(code.conjugate_partners[j]))
      rep.intermediary_partners_ok = false;
  }

  // Gauge fixing round trip: measuring I on the split code must yield the
  // merged row space, and re-measuring the ancilla initialization on that
  // must restore the split row space.
  const auto to_rows = [](const std::vector<PauliOp>& ops) { return symplectic_rows(ops); };
  const auto fixed_merge = gauge_fix(code, GaugeFixDirection::Merge);
  const bool merge_ok = gf2_same_row_space(to_rows(fixed_merge), merged_rows);
  SubsystemCodeSpec roundtrip = code;
  roundtrip.merged = fixed_merge;
  const auto fixed_split = gauge_fix(roundtrip, GaugeFixDirection::Split);
  const bool split_ok = gf2_same_row_space(to_rows(fixed_split), split_rows);
  rep.gauge_fix_roundtrip_ok = merge_ok && split_ok;

  const MeasurementSubset m = select_measurement_subset(inst);
  const bool zz = inst.basis == MergeBasis::ZZ;
  const size_t n = code.n;
  std::vector<int> coverage(n, 0);
  for (size_t i : m.indices) {
    const BitVec& sup = zz ? inst.merged[i].op.z : inst.merged[i].op.x;
    for (size_t q : sup.set_bits()) ++coverage[q];
  }
  const BitVec& target_sup = zz ? m.target.z : m.target.x;
  rep.m_product_ok = true;
  rep.parity_ok = true;
  rep.target_covered_once = true;
  for (size_t q = 0; q < n; ++q) {
    const bool in_target = target_sup.get(q);
    if ((coverage[q] % 2 == 1) != in_target) {
      rep.m_product_ok = false;
      rep.parity_ok = false;
    }
    if (in_target && coverage[q] != 1) rep.target_covered_once = false;
  }

  rep.distance = verify_distance(code, d_target, randomized_trials);
  return rep;
}

}  // namespace surgecc

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surgecc/pauli.hpp"
#include "surgecc/substrate.hpp"

namespace surgecc {

enum class MergeBasis { ZZ, XX };

// Provenance of a generator within a merge instance; the measurement-subset
// construction and the dump format use these tags.
enum class GenKind {
  PatchFace,    // face of one of the merged patches (possibly wall-extended)
  CorridorFace, // face centered on a corridor line
  Domino,       // corridor pair gained by a wall face (extension * original)
  AncillaInit,  // split only: single-qubit stabilizer on a corridor qubit
};

struct TaggedOp {
  PauliOp op;
  GenKind kind = GenKind::PatchFace;
  bool merge_type = false;  // operator is of the merge-basis type (Z for a ZZ merge)
  int slot = -1;            // owning patch slot where applicable
  Site site{};              // hole / corridor site it derives from
};

struct MergeSpec {
  const ColorSubstrate* substrate = nullptr;
  int left_slot = -1;
  int right_slot = -1;
  std::vector<int> snake;  // interior ancilla slots, in path order
  MergeBasis basis = MergeBasis::ZZ;
  int logical_ancilla_slot = -1;  // snake slot hosting the CNOT ancilla

  std::vector<int> path() const;
  void validate() const;
};

// Shared qubit universe of a merge: every patch qubit plus the corridor
// qubits of the interfaces along the path, indexed in sorted site order.
struct MergeGeometry {
  std::vector<Site> qubits;
  std::map<Site, int> index;
  std::vector<int> path;
  std::vector<const Interface*> interfaces;
  std::vector<int> left_inner;   // inner-boundary logical representative
  std::vector<int> right_inner;
  int qubit(Site s) const;
};

MergeGeometry build_merge_geometry(const MergeSpec& spec);

// Split configuration: the stabilizers of the disconnected patches plus
// single-qubit stabilizers on the corridor qubits (|+> for a ZZ merge, |0>
// for XX).
std::vector<TaggedOp> build_split_stabilizers(const MergeSpec& spec);

// Merged configuration: every patch face trimmed to the merged region (wall
// faces extend across their corridor), the faces centered on corridor lines,
// and one corridor domino per wall face. For a ZZ merge the extension and
// corridor structure exists for Z only; X faces stop at the domain wall.
std::vector<TaggedOp> build_merged_stabilizers(const MergeSpec& spec);

// Target logical operator (Z_L Z_L or X_L X_L) on the two inner boundaries.
PauliOp merge_target_logical(const MergeSpec& spec);

struct MergeInstance {
  MergeGeometry geom;
  std::vector<TaggedOp> split;
  std::vector<TaggedOp> merged;
  PauliOp target;
  MergeBasis basis = MergeBasis::ZZ;
};

MergeInstance build_color_merge(const MergeSpec& spec);

// Surface-code merge instance: left rotated patch, a straight snake of
// square ancilla patches, right patch (folded when requested), rough-merged
// through one-column seams.
MergeInstance build_surface_merge(int distance, int snake_patches, MergeBasis basis,
                                  bool right_folded);

// ---------------------------------------------------------------------------
// Joint subsystem code.
// ---------------------------------------------------------------------------

struct SubsystemCodeSpec {
  size_t n = 0;
  std::vector<PauliOp> split;
  std::vector<PauliOp> merged;
  std::vector<PauliOp> stabilizers;           // canonical basis of S = span(split) ^ span(merged)
  std::vector<size_t> intermediary;           // indices into `merged`: the set I
  std::vector<PauliOp> conjugate_partners;    // one per intermediary element
  std::vector<PauliOp> gauge_generators;      // presentation of L_g (split+merged+partners mod S)
  std::vector<PauliOp> bare_logicals;         // representatives of B
  // Echelonized gauge group for membership tests.
  std::vector<BitVec> gauge_rref;
  std::vector<size_t> gauge_pivots;
  std::vector<BitVec> stab_rref;
  std::vector<size_t> stab_pivots;

  bool in_gauge_group(const PauliOp& p) const;
  size_t gauge_pair_count() const;
  size_t logical_count() const;
};

SubsystemCodeSpec build_subsystem_code(const std::vector<PauliOp>& split,
                                       const std::vector<PauliOp>& merged);
SubsystemCodeSpec build_subsystem_code(const MergeInstance& inst);

enum class GaugeFixDirection { Merge, Split };

// Gottesman-Knill update: measuring the intermediary set on the split code
// (direction Merge) or the ancilla-initialization singles on the merged code
// (direction Split).
std::vector<PauliOp> gauge_fix(const SubsystemCodeSpec& code, GaugeFixDirection direction);

struct MeasurementSubset {
  std::vector<size_t> indices;  // into the merged generator list
  PauliOp target;
};

MeasurementSubset select_measurement_subset(const MergeInstance& inst);

// ---------------------------------------------------------------------------
// Distance verification.
// ---------------------------------------------------------------------------

struct DistanceReport {
  bool ok = false;           // no dressed logical lighter than d_target
  bool exhaustive = false;   // search covered every Pauli below d_target
  int searched_weight = 0;   // exhaustively covered weight
  long trials = 0;           // randomized trials beyond the exhaustive bound
  std::optional<PauliOp> witness;
};

// Exhaustive meet-in-the-middle search up to weight 4; randomized
// information-set search above that (reported as non-exhaustive).
DistanceReport verify_distance(const SubsystemCodeSpec& code, int d_target,
                               long randomized_trials = 3000);

// Minimum weight of a Z-type (or X-type) dressed logical, searched
// exhaustively up to max_weight.
struct TypedDistanceReport {
  bool found = false;
  int weight = 0;
  PauliOp witness;
};
TypedDistanceReport min_typed_dressed_logical(const SubsystemCodeSpec& code, bool z_type,
                                              int max_weight);

// ---------------------------------------------------------------------------
// Stabilizer dump.
// ---------------------------------------------------------------------------

std::string stabilizer_dump(const MergeInstance& inst, const SubsystemCodeSpec& code,
                            const MeasurementSubset& m);

// ---------------------------------------------------------------------------
// Full invariant suite for one merge instance.
// ---------------------------------------------------------------------------

struct VerificationReport {
  bool split_commuting = false;
  bool merged_commuting = false;
  bool stabilizers_in_both_spans = false;
  bool intersection_rank_ok = false;  // rank identity rk(S) = rk(A)+rk(B)-rk(A u B)
  bool stabilizer_center_ok = false;  // S commutes with every gauge generator
  bool intermediary_partners_ok = false;
  bool gauge_fix_roundtrip_ok = false;
  bool m_product_ok = false;
  bool parity_ok = false;       // target qubits odd, all others even
  bool target_covered_once = false;  // the stronger reading of the parity rule
  DistanceReport distance;
  size_t n = 0;
  size_t stabilizer_rank = 0;
  size_t gauge_pairs = 0;
  size_t logicals = 0;

  bool all_ok() const {
    return split_commuting && merged_commuting && stabilizers_in_both_spans &&
           intersection_rank_ok && stabilizer_center_ok && intermediary_partners_ok &&
           gauge_fix_roundtrip_ok && m_product_ok && parity_ok && distance.ok;
  }
};

VerificationReport verify_merge(const MergeInstance& inst, int d_target,
                                long randomized_trials = 3000);

}  // namespace surgecc

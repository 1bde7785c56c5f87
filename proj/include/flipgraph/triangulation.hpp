#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flipgraph/surface.hpp"

namespace flipgraph {

/// Reference to a side of a triangulation: an interior arc (by stable id) or
/// a boundary segment (by the slot it occupies).
struct ArcRef {
  enum class Kind : std::uint8_t { Interior, Boundary };

  Kind kind = Kind::Interior;
  int id = -1;

  static ArcRef interior(int arc_id) { return {Kind::Interior, arc_id}; }
  static ArcRef boundary(int slot) { return {Kind::Boundary, slot}; }
  bool is_interior() const { return kind == Kind::Interior; }

  friend auto operator<=>(const ArcRef&, const ArcRef&) = default;
};

/// Half-edge style gluing of triangles.
///
/// Slot 3*t+i is side i of triangle t, running from corner i to corner i+1
/// (corners counter-clockwise). Paired slots are glued with reversed
/// orientation: if slot (t,i) is paired with (u,j) then corner i of t meets
/// corner j+1 of u and corner i+1 of t meets corner j of u. Unpaired slots are
/// boundary segments. Both slots of a pairing carry the same arc id.
class Triangulation {
 public:
  static constexpr int kBoundary = -1;

  Triangulation() = default;

  /// Builds and validates a gluing. `arc_ids` may be empty, in which case
  /// pairing orbits are numbered in slot order.
  static Triangulation from_pairing(int triangles, std::vector<int> pairing,
                                    std::vector<int> arc_ids = {});
  /// The empty triangulation of a surface that admits no triangles.
  static Triangulation empty(const SurfaceSig& sig);

  int triangle_count() const { return triangles_; }
  int slot_count() const { return 3 * triangles_; }
  int partner(int slot) const { return pair_[slot]; }
  bool is_boundary_slot(int slot) const { return pair_[slot] == kBoundary; }
  int arc_of(int slot) const { return arc_[slot]; }
  int next_arc_id() const { return next_id_; }
  const std::vector<int>& pairing() const { return pair_; }
  const std::vector<int>& arc_ids() const { return arc_; }
  const std::optional<SurfaceSig>& declared_signature() const { return declared_; }

  static int tri_of(int slot) { return slot / 3; }
  static int side_of(int slot) { return slot % 3; }
  static int slot_at(int tri, int side) { return 3 * tri + ((side % 3) + 3) % 3; }

  /// Sorted ids of interior arcs.
  std::vector<int> arcs() const;
  std::vector<int> boundary_slots() const;
  bool has_arc(int arc_id) const;
  /// The two slots carrying an interior arc. Throws NotInterior if absent.
  std::array<int, 2> slots_of(int arc_id) const;

  bool is_folded(int tri) const;
  int folded_count() const;
  bool is_flippable(int arc_id) const;
  std::vector<ArcRef> flippable_arcs() const;

  /// The flip along `a`. Retained arcs keep their ids; the new arc gets
  /// next_arc_id() of this triangulation.
  Triangulation flip(ArcRef a) const;
  Triangulation flip(int arc_id) const { return flip(ArcRef::interior(arc_id)); }

  /// Number of triangles having both a and b as sides.
  int common_triangles(ArcRef a, ArcRef b) const;

  /// Vertex (marked point) index of each corner, numbered by first occurrence.
  std::vector<int> corner_vertices() const;
  int vertex_count() const;

  SurfaceSig signature() const;
  std::vector<SurfaceSig> cut_along_arcs(std::span<const ArcRef> arcs) const;

  /// Labelling-free class of the gluing structure, invariant under
  /// relabelling triangles, rotating slots and reversing orientation.
  std::string canonical_class() const;
  /// Canonical code of the gluing with a label on every corner's vertex.
  /// `corner_labels` is indexed by corner (same indexing as slots).
  std::string canonical_labelled(std::span<const int> corner_labels, bool allow_mirror) const;

  /// Text form: `triangles=k` then `pair (t,i)-(u,j)` and `boundary (t,i)`
  /// lines in slot order.
  std::string serialize() const;
  static Triangulation parse(std::string_view text);

  /// Same gluing, same arc ids.
  friend bool operator==(const Triangulation& x, const Triangulation& y) {
    return x.triangles_ == y.triangles_ && x.pair_ == y.pair_ && x.arc_ == y.arc_ &&
           x.declared_ == y.declared_;
  }

 private:
  void validate();

  int triangles_ = 0;
  std::vector<int> pair_;
  std::vector<int> arc_;
  int next_id_ = 0;
  std::optional<SurfaceSig> declared_;
};

/// Deterministic triangulation built by fan-triangulating a fused polygon.
/// Throws NoTriangulation for surfaces that cannot be cut into triangles
/// other than the arc-free ones, which get the empty triangulation.
Triangulation base_triangulation(const SurfaceSig& sig);

/// Free functions mirroring the member operations.
inline SurfaceSig signature_of(const Triangulation& t) { return t.signature(); }
inline std::vector<ArcRef> flippable_arcs(const Triangulation& t) { return t.flippable_arcs(); }
inline Triangulation flip(const Triangulation& t, ArcRef a) { return t.flip(a); }
inline int common_triangles(const Triangulation& t, ArcRef a, ArcRef b) {
  return t.common_triangles(a, b);
}

}  // namespace flipgraph

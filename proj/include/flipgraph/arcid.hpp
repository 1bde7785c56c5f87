#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flipgraph/triangulation.hpp"

namespace flipgraph {

/// Intersection numbers of one arc against the reference family R (the base
/// arcs followed by the one-flip replacement of each flippable base arc).
/// An arc that is itself a member of R carries -1 at its own index.
using ArcCoord = std::vector<int>;

/// A reference arc drawn in normal position against a triangulation: either
/// one of its arcs, or a path listing the slot crossed on leaving each
/// triangle. The path starts at the corner opposite its first slot and ends
/// at the corner opposite the slot it last enters through.
struct TracedArc {
  int edge = -1;
  std::vector<int> exits;

  bool is_edge() const { return edge >= 0; }
  friend bool operator==(const TracedArc&, const TracedArc&) = default;
};

/// A triangulation together with the reference family traced against it.
/// This is the coordinate map of the flip-graph vertex.
struct CoordState {
  Triangulation tri;
  std::vector<TracedArc> refs;
};

/// Canonical flip-graph vertex key: the sorted coordinate vectors of the
/// interior arcs, plus a 64-bit digest of their text form.
struct TriKey {
  std::vector<ArcCoord> coords;
  std::string text;
  std::uint64_t digest = 0;

  friend bool operator==(const TriKey& a, const TriKey& b) { return a.text == b.text; }
  friend bool operator<(const TriKey& a, const TriKey& b) { return a.text < b.text; }
};

std::string coord_text(const ArcCoord& c);
ArcCoord parse_coord(const std::string& text);
std::uint64_t digest_of(const std::string& text);

/// Reference family traced in the base triangulation itself.
CoordState reference_state(const Triangulation& base);

/// Coordinates of every interior arc of `state.tri`, keyed by arc id.
std::map<int, ArcCoord> coords_of(const CoordState& state);
ArcCoord coord_of(const CoordState& state, int arc_id);

/// base_coords: the coordinate map of the base triangulation.
std::map<int, ArcCoord> base_coords(const Triangulation& base);

/// Flip together with the traced reference family. Throws NotFlippable.
CoordState flip_state(const CoordState& state, ArcRef a);

/// Coordinate vector of the arc replacing `a`.
ArcCoord flip_coords(const CoordState& state, ArcRef a);

TriKey tri_key(const CoordState& state);
TriKey tri_key_from_text(const std::string& text);

/// Max-plus exchange check for a flip whose two triangles are non-folded and
/// whose four surrounding sides are distinct. Returns std::nullopt when the
/// flip is outside that case, otherwise whether
///   c(a) + c(a') == max(c(w)+c(y), c(x)+c(z))
/// holds in every component (-1 read as 0; boundary sides read as 0).
std::optional<bool> ptolemy_consistent(const CoordState& before, ArcRef a);

/// Components r where that identity fails (empty when it holds or does not
/// apply).
std::vector<int> ptolemy_defects(const CoordState& before, ArcRef a);

/// True when reference arc r is the flipped arc or has an endpoint in one of
/// the two triangles around it. Only such components can break the max-plus
/// identity: a reference arc crossing the quadrilateral from side to side
/// always satisfies it.
bool ends_in_quad(const CoordState& before, ArcRef a, int r);

/// Checks that every traced path is a normal path in `state.tri`.
bool traced_paths_normal(const CoordState& state);

}  // namespace flipgraph

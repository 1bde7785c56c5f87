#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace flipgraph {

/// Homeomorphism type of a compact orientable surface with marked points:
/// genus, interior marked points, and the marked-point count of each
/// boundary component (kept sorted).
class SurfaceSig {
 public:
  SurfaceSig() = default;
  /// Throws Error(InvalidSignature) on a boundary component without marked
  /// points or a surface with no marked points at all.
  SurfaceSig(int genus, int interior, std::vector<int> boundary = {});

  int genus() const { return genus_; }
  int interior() const { return interior_; }
  const std::vector<int>& boundary() const { return boundary_; }
  int boundary_components() const { return static_cast<int>(boundary_.size()); }
  int boundary_points() const;
  int marked_points() const { return interior_ + boundary_points(); }

  /// `S<g>,<n>` or `S<g>,<n>,(<p1>,...,<pb>)`.
  std::string str() const;
  /// Inverse of str(). Throws Error(Parse) naming the offending token.
  static SurfaceSig parse(std::string_view text);

  friend auto operator<=>(const SurfaceSig&, const SurfaceSig&) = default;
  friend bool operator==(const SurfaceSig&, const SurfaceSig&) = default;

 private:
  int genus_ = 0;
  int interior_ = 1;
  std::vector<int> boundary_;
};

/// 6g + 3b + 3n + sum(p_i) - 6.
int complexity(const SurfaceSig& sig);

/// Number of arcs in any triangulation; handles the surfaces where the
/// complexity formula does not apply.
int arc_count(const SurfaceSig& sig);

/// Number of triangles in any triangulation (0 when the surface cannot be
/// cut into triangles).
int triangle_count(const SurfaceSig& sig);

bool is_simple(const SurfaceSig& sig);

/// Membership in the table of essential subsurfaces of S_{0,n} (n <= 4) and
/// S_{1,n} (n <= 2). The table lives in data/exceptional_table.txt and is
/// regenerated by the gen_exceptional tool.
bool is_exceptional(const SurfaceSig& sig);
const std::vector<SurfaceSig>& exceptional_table();

}  // namespace flipgraph

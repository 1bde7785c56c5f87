#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "flipgraph/arcid.hpp"

namespace flipgraph {

/// Vertex budget used when no explicit budget is given: FLIPGRAPH_BUDGET if
/// set, otherwise five million.
std::int64_t default_budget();

struct BallOptions {
  std::int64_t budget = default_budget();
  int threads = 1;
};

struct BallVertex {
  TriKey key;
  int dist = 0;
  // Absent for balls read back from an export.
  std::optional<CoordState> state;
};

// u < v (vertex indices); removed/added are coordinate texts of the arc
// flipped out of u and the arc that replaces it in v.
struct BallEdge {
  int u = 0, v = 0;
  std::string removed, added;
  friend bool operator==(const BallEdge&, const BallEdge&) = default;
};

struct Ball {
  SurfaceSig surface;
  int radius = 0;
  int complete_to = 0;
  int root = 0;
  std::vector<BallVertex> vertices;  // sorted by key text
  std::vector<BallEdge> edges;       // sorted by (u, v)
  std::vector<std::vector<int>> adj;

  int size() const { return static_cast<int>(vertices.size()); }
  const std::string& key(int v) const { return vertices[v].key.text; }
  const std::string& root_key() const { return key(root); }
  std::optional<int> find(const std::string& key) const;
  int index_of(const std::string& key) const;  // throws Precondition
  bool complete(int v) const { return vertices[v].dist <= complete_to; }
  bool adjacent(int u, int v) const;
  /// Rebuilds the key index and adjacency lists from vertices and edges.
  void reindex();

 private:
  std::unordered_map<std::string, int> index_;
};

/// Graph-level equality (surface, radii, keys, distances, edges).
bool same_graph(const Ball& a, const Ball& b);

/// Breadth-first ball around the base triangulation.
Ball ball(const SurfaceSig& sig, int r, const BallOptions& opts = {});
/// Breadth-first ball around an arbitrary coordinatized triangulation.
Ball ball_from(const CoordState& root, int r, const BallOptions& opts = {});

struct Path2Class {
  enum class Kind { FourCycle, FiveCycle, NoShortCycle };
  Kind kind = Kind::NoShortCycle;
  std::vector<std::string> cycle;
};

std::string to_string(Path2Class::Kind k);

/// Classifies the length-2 path T_a - T - T_b. The cycle is built by
/// flipping (T, T_a, T_ab, T_b or T, T_a, T_ab, T_ba, T_b). With a context
/// ball, every cycle vertex and edge is checked to be present there.
Path2Class classify_path2(const CoordState& t, ArcRef a, ArcRef b, const Ball* context = nullptr);

/// All simple cycles of length <= maxlen containing the path p0 - p1 - p2,
/// as vertex-index lists starting p1, p2, ..., p0. Each cycle appears once.
std::vector<std::vector<int>> cycles_through(const std::array<int, 3>& path, int maxlen,
                                             const Ball& context);

struct ShortCycleViolation {
  std::string key;
  int a = -1, b = -1;
  std::string reason;
};

struct ShortCycleReport {
  long long paths = 0;
  std::map<std::string, long long> by_kind;
  std::vector<ShortCycleViolation> violations;
};

/// For every vertex with dist <= complete_to - 2 and every pair of its
/// flippable arcs: the classification matches the common-triangle count, the
/// classified cycle is the only cycle of length <= 5 through the path, and
/// no 3-cycle exists.
ShortCycleReport verify_short_cycles(const Ball& b);

std::string export_json(const Ball& b);
std::string export_dot(const Ball& b);
Ball import_json(const std::string& text);

/// degree -> count over vertices with dist <= complete_to.
std::map<int, int> degree_profile(const Ball& b);

}  // namespace flipgraph

#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "flipgraph/flipgraph.hpp"
#include "flipgraph/triangulation.hpp"

namespace flipgraph::oracles {

// A slope p/q, normalised so that q > 0, or q == 0 and p == 1.
struct Slope {
  long long p = 1, q = 0;
  friend auto operator<=>(const Slope&, const Slope&) = default;
};

Slope make_slope(long long p, long long q);
std::string to_string(const Slope& s);

// Three slopes pairwise at determinant +-1, sorted.
struct FareyVertex {
  std::array<Slope, 3> s;
  friend auto operator<=>(const FareyVertex&, const FareyVertex&) = default;
};

FareyVertex make_farey(Slope a, Slope b, Slope c);  // throws Precondition
bool farey_valid(const FareyVertex& v);
std::array<FareyVertex, 3> farey_neighbors(const FareyVertex& v);
FareyVertex farey_root();
std::string to_string(const FareyVertex& v);

// A small undirected graph with a distinguished root, used to compare model
// balls against engine balls.
struct RootedGraph {
  int root = 0;
  std::vector<std::vector<int>> adj;
  int size() const { return static_cast<int>(adj.size()); }
  int edge_count() const;
};

RootedGraph farey_ball(int r);
/// Vertices are winding pairs {k, k+1} for -r <= k <= r.
RootedGraph annulus_model_ball(int r);
RootedGraph rooted_graph_of(const Ball& b);

/// Rooted isomorphism test for trees (AHU encoding). Returns false when
/// either graph is not a tree.
bool rooted_tree_isomorphic(const RootedGraph& a, const RootedGraph& b);

// Boundary capping S_{1,0,(1)} -> S_{1,1}. Every slot carries the class in
// H_1 of the capped torus of its side, read in the slot's direction; the
// boundary segment is null-homologous after capping.
struct CappedTorus {
  Triangulation tri;
  std::vector<std::array<long long, 2>> cls;

  Slope slope_of(int arc_id) const;  // throws ProjectionUndefined
};

CappedTorus cap_base();
CappedTorus cap_flip(const CappedTorus& c, int arc_id);
/// The Farey vertex of the capped triangulation. Throws ProjectionUndefined
/// unless exactly three distinct slopes occur and form a Farey triangle.
FareyVertex cap_boundary(const CappedTorus& c);

/// Projection of every vertex of an S_{1,0,(1)} ball, carried along the
/// discovery tree of the ball.
std::vector<FareyVertex> cap_ball(const Ball& b);

/// Every gluing of the right number of triangles whose reconstructed
/// signature is `sig`, one representative per canonical_class.
std::vector<Triangulation> enumerate_all(const SurfaceSig& sig, long long budget = 50'000'000);

/// Number of isotopy classes of triangulations, counted by enumerating all
/// gluings together with every identification of their vertices with the
/// marked points of the surface. Valid when the pure mapping class group is
/// trivial: S_{0,3}, disks and once-punctured disks.
long long count_labelled(const SurfaceSig& sig, long long budget = 50'000'000);

}  // namespace flipgraph::oracles

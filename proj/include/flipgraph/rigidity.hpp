#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flipgraph/flipgraph.hpp"
#include "flipgraph/oracles.hpp"

namespace flipgraph {

// ---- rigid closure ----

struct ForcedStep {
  std::string rule;  // "R1-4", "R1-5" or "R2"
  std::string forced, image;
  std::vector<std::string> witness;
};

/// Partial injective map from domain vertices to host vertices (indices into
/// the respective balls). The domain must carry triangulation states; the
/// host may be an imported graph.
struct PartialMap {
  const Ball* domain = nullptr;
  const Ball* host = nullptr;
  std::map<int, int> assignment;
  std::vector<ForcedStep> trace;
};

struct ClosureOptions {
  bool use_r1 = true;
  bool use_r2 = true;
  // When set, R2 only fires at this domain vertex.
  int r2_site = -1;
};

/// Least fixed point of the forcing rules. Throws Contradiction when a
/// forced image is missing, ambiguous or conflicts with the map, and
/// InsufficientRadius when a host check leaves the explored part of the host.
PartialMap rigid_closure(PartialMap pm, const ClosureOptions& opts = {});

/// Identity seeding of `domain` vertices into a host that contains them.
PartialMap identity_seed(const Ball& domain, const Ball& host, const std::vector<int>& domain_vertices);

/// Replays a trace against an independently known map (key -> key): every
/// forced image must agree with it.
bool replay_agrees(const PartialMap& pm, const std::map<std::string, std::string>& reference);

std::string trace_json(const PartialMap& pm);

/// Induced subgraph on `keep`, keeping states and distances; complete_to is
/// set so that every kept vertex counts as explored.
Ball induced_subgraph(const Ball& b, const std::vector<int>& keep);

// ---- Case-3 configurations ----

/// The two third sides c (in the first common triangle) and d of a pair of
/// arcs bordering two common triangles, as ArcRefs (boundary sides by slot).
struct ThirdSides {
  ArcRef c, d;
  bool second_arrangement = false;  // the annulus-type arrangement
};

ThirdSides third_sides(const Triangulation& t, ArcRef a, ArcRef b);  // Precondition unless 2 common

struct BSet {
  std::map<std::string, std::string> roles;  // "T", "T_a", ..., "T_ce" -> key
  ArcRef a, b, c, e;
  std::vector<std::vector<std::string>> four_cycles, five_cycles;
  std::vector<std::string> keys() const;  // distinct keys, sorted
};

BSet build_bset(const CoordState& t, ArcRef a, ArcRef b, const Ball* context = nullptr);

struct DoubleTriangleViolation {
  std::string key;
  int a = -1, b = -1;
  std::string reason;
};

struct DoubleTriangleReport {
  int triangulations = 0;
  int pairs = 0;  // ordered pairs with two common triangles
  std::vector<DoubleTriangleViolation> violations;
};

DoubleTriangleReport check_double_triangle_pairs(const SurfaceSig& sig, const std::vector<CoordState>& sample);

/// First `count` vertices of a BFS from the base (in discovery order).
std::vector<CoordState> bfs_sample(const SurfaceSig& sig, int count);

// ---- non-rigidity witnesses ----

struct SimpleGraph {
  std::vector<std::vector<int>> adj;
  int size() const { return static_cast<int>(adj.size()); }
};

SimpleGraph path_graph(int n);

/// Injective edge-preserving maps extending `seed` (domain vertex -> host
/// vertex), at most `limit`, sorted.
std::vector<std::vector<int>> search_injective_homs(const SimpleGraph& domain, const Ball& host,
                                                    const std::map<int, int>& seed, int limit);

struct Ladder {
  std::vector<std::string> gamma, gamma_e;  // 2h+1 keys each, left to right
  std::vector<std::pair<std::string, std::string>> rungs;
  std::vector<std::array<std::string, 4>> squares;
  // States along gamma; square i is T_i - T_{i+1} and T_i - e-flip.
  std::vector<CoordState> states;
  ArcRef e;
  int vertex_count() const;
};

Ladder build_ladder(const CoordState& t, ArcRef a, ArcRef b, ArcRef e, int half_length);

/// A triangulation in a BFS ball of `sig` containing the annulus-type
/// arrangement, together with the pair (a,b) and an admissible e.
struct LadderSite {
  CoordState t;
  ArcRef a, b, e;
};
std::optional<LadderSite> find_ladder_site(const SurfaceSig& sig, int radius);

// ---- counting ----

/// (1/5)*3*2^(n-1) <= (2n+1)*(3*2^(5n/6) - 2), decided exactly.
bool growth_predicate(int n);
int growth_inequality_max_n(int search_limit = 1000);

boost::multiprecision::cpp_rational average_distance_bound(int n);
boost::multiprecision::cpp_rational average_distance_sum(int n);

// ---- fibres of the capping projection ----

struct FiberReport {
  std::vector<int> type0, type1;  // edge indices into the ball
  std::vector<oracles::FareyVertex> image;
  int bad_degree_vertices = 0;
  int non_path_fibers = 0;
  int lipschitz_failures = 0;
  int fiber_growth_failures = 0;
  bool ok() const {
    return bad_degree_vertices == 0 && non_path_fibers == 0 && lipschitz_failures == 0 &&
           fiber_growth_failures == 0;
  }
};

FiberReport fiber_edges(const Ball& b);

}  // namespace flipgraph

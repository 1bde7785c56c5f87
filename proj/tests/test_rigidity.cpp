#include <gtest/gtest.h>

#include "flipgraph/error.hpp"
#include "flipgraph/experiments.hpp"

using namespace flipgraph;
using boost::multiprecision::cpp_rational;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::Precondition;
}

std::vector<ThirdSides> double_pairs(const Triangulation& t) {
  std::vector<ThirdSides> out;
  auto arcs = t.flippable_arcs();
  for (const ArcRef& a : arcs)
    for (const ArcRef& b : arcs)
      if (a < b && t.common_triangles(a, b) == 2) out.push_back(third_sides(t, a, b));
  return out;
}

}  // namespace

TEST(Arrangement, TorusIsAnnulusType) {
  auto pairs = double_pairs(base_triangulation(SurfaceSig(1, 1)));
  ASSERT_EQ(pairs.size(), 3u);
  for (const ThirdSides& p : pairs) EXPECT_TRUE(p.second_arrangement);
}

TEST(Arrangement, PillowIsNot) {
  const Ball b = ball(SurfaceSig(0, 3), 3);
  int seen = 0;
  for (const BallVertex& v : b.vertices)
    for (const ThirdSides& p : double_pairs(v.state->tri)) {
      EXPECT_FALSE(p.second_arrangement);
      ++seen;
    }
  EXPECT_GT(seen, 0);
}

TEST(Arrangement, NeedsTwoCommonTriangles) {
  const Triangulation t = base_triangulation(SurfaceSig(0, 5));
  auto arcs = t.flippable_arcs();
  for (const ArcRef& a : arcs)
    for (const ArcRef& b : arcs)
      if (a != b && t.common_triangles(a, b) < 2)
        EXPECT_EQ(kind_of([&] { third_sides(t, a, b); }), ErrorKind::Precondition);
}

TEST(DoubleTriangles, NonSimpleSamples) {
  for (const SurfaceSig& sig : {SurfaceSig(0, 5), SurfaceSig(1, 2), SurfaceSig(0, 1, {1, 1})}) {
    const DoubleTriangleReport rep = check_double_triangle_pairs(sig, bfs_sample(sig, 120));
    EXPECT_EQ(rep.triangulations, 120);
    EXPECT_TRUE(rep.violations.empty()) << sig.str();
  }
  EXPECT_EQ(kind_of([] { check_double_triangle_pairs(SurfaceSig(0, 4), {}); }), ErrorKind::Precondition);
}

TEST(BSet, ThirteenRoles) {
  auto site = find_ladder_site(SurfaceSig(1, 2), 3);
  ASSERT_TRUE(site.has_value());
  const BSet bs = build_bset(site->t, site->a, site->b);
  EXPECT_EQ(bs.roles.size(), 13u);
  EXPECT_EQ(bs.keys().size(), 13u);
  EXPECT_EQ(bs.roles.at("T"), tri_key(site->t).text);
  EXPECT_EQ(bs.four_cycles.size(), 2u);
  EXPECT_EQ(bs.five_cycles.size(), 3u);
}

TEST(BSet, SmallDomainIsReported) {
  auto site = find_ladder_site(SurfaceSig(1, 2), 3);
  ASSERT_TRUE(site.has_value());
  const Ball tiny = ball_from(site->t, 1);
  EXPECT_EQ(kind_of([&] { build_bset(site->t, site->a, site->b, &tiny); }), ErrorKind::InsufficientRadius);
}

TEST(Closure, StarForcesAllButCollar) {
  ClosureOptions opts;
  opts.use_r2 = false;
  const CoordState root = closure_root(SurfaceSig(0, 0, {1, 2}));
  const ClosureRun run = run_star_closure(root, 6, 9, opts);
  EXPECT_TRUE(run.replay_ok);
  EXPECT_EQ(run.forced_radius, 4);
  for (const ForcedStep& s : run.map.trace) {
    EXPECT_EQ(s.forced, s.image);
    EXPECT_TRUE(s.rule == "R1-4" || s.rule == "R1-5");
  }
}

TEST(Closure, TamperedSeedContradicts) {
  const CoordState root = closure_root(SurfaceSig(0, 0, {1, 2}));
  const Ball dom = ball_from(root, 5), host = ball_from(root, 8);
  std::vector<int> star{dom.root};
  for (int w : dom.adj[dom.root]) star.push_back(w);
  PartialMap pm = identity_seed(dom, host, star);
  std::swap(pm.assignment[dom.adj[dom.root][0]], pm.assignment[dom.adj[dom.root][1]]);
  EXPECT_EQ(kind_of([&] { rigid_closure(pm, {true, false}); }), ErrorKind::Contradiction);
}

TEST(Closure, TraceJsonIsDeterministic) {
  const CoordState root = closure_root(SurfaceSig(0, 0, {1, 2}));
  const ClosureRun a = run_star_closure(root, 4, 7, {});
  const ClosureRun b = run_star_closure(root, 4, 7, {});
  EXPECT_EQ(trace_json(a.map), trace_json(b.map));
  EXPECT_EQ(trace_json(a.map).front(), '[');
}

TEST(Homs, PathsInCubicTree) {
  const Ball host = ball(SurfaceSig(1, 1), 6);
  // An injective path of length 2 from a vertex of a 3-regular tree: 3 * 2.
  EXPECT_EQ(search_injective_homs(path_graph(3), host, {{0, host.root}}, 100).size(), 6u);
  EXPECT_EQ(search_injective_homs(path_graph(4), host, {{0, host.root}}, 100).size(), 12u);
  EXPECT_EQ(search_injective_homs(path_graph(3), host, {{0, host.root}}, 4).size(), 4u);
  EXPECT_EQ(kind_of([&] { search_injective_homs(path_graph(3), host, {{0, host.root}, {1, host.root}}, 5); }),
            ErrorKind::Precondition);
}

TEST(Homs, SegmentExtensions) {
  const SegmentExtension r = run_segment_extension(8, 6, 2);
  EXPECT_EQ(r.segment.size(), 6u);
  EXPECT_EQ(r.extensions.size(), 4u);
  for (const auto& e : r.extensions)
    EXPECT_TRUE(std::equal(r.segment.begin(), r.segment.end(), e.begin()));
}

TEST(Ladder, SquaresAreFourCycles) {
  auto site = find_ladder_site(SurfaceSig(1, 2), 3);
  ASSERT_TRUE(site.has_value());
  const Ladder l = build_ladder(site->t, site->a, site->b, site->e, 2);
  EXPECT_EQ(l.gamma.size(), 5u);
  EXPECT_EQ(l.gamma_e.size(), 5u);
  EXPECT_EQ(l.squares.size(), 4u);
  EXPECT_EQ(l.vertex_count(), 10);
  for (std::size_t i = 0; i + 1 < l.states.size(); ++i)
    for (const ArcRef& x : l.states[i].tri.flippable_arcs())
      if (tri_key(flip_state(l.states[i], x)).text == l.gamma[i + 1])
        EXPECT_EQ(classify_path2(l.states[i], x, l.e).kind, Path2Class::Kind::FourCycle);
  EXPECT_EQ(kind_of([&] { build_ladder(site->t, site->a, site->b, site->e, -1); }), ErrorKind::Precondition);
}

TEST(Counting, GrowthThreshold) {
  EXPECT_TRUE(growth_predicate(1));
  EXPECT_TRUE(growth_predicate(61));
  EXPECT_FALSE(growth_predicate(62));
  EXPECT_FALSE(growth_predicate(200));
  EXPECT_EQ(growth_inequality_max_n(), 61);
}

TEST(Counting, AverageDistance) {
  for (int n = 1; n <= 64; ++n) {
    EXPECT_EQ(average_distance_sum(n), average_distance_bound(n)) << n;
    EXPECT_EQ(average_distance_bound(n), cpp_rational(2 * n, 3)) << n;
  }
}

TEST(Fibers, SmallBall) {
  const Ball b = ball(SurfaceSig(1, 0, {1}), 5);
  const FiberReport rep = fiber_edges(b);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.type0.size() + rep.type1.size(), b.edges.size());
  EXPECT_EQ(kind_of([] { fiber_edges(ball(SurfaceSig(1, 1), 2)); }), ErrorKind::Precondition);
}

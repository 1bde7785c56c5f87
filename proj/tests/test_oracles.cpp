#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

#include "flipgraph/error.hpp"
#include "flipgraph/oracles.hpp"

using namespace flipgraph;
using namespace flipgraph::oracles;

TEST(Farey, Neighbours) {
  const FareyVertex root = farey_root();
  EXPECT_TRUE(farey_valid(root));
  std::set<FareyVertex> seen;
  for (const FareyVertex& n : farey_neighbors(root)) {
    EXPECT_TRUE(farey_valid(n));
    seen.insert(n);
    int shared = 0;
    for (const Slope& a : n.s)
      for (const Slope& b : root.s) shared += a == b;
    EXPECT_EQ(shared, 2);
  }
  EXPECT_EQ(seen.size(), 3u);
  EXPECT_THROW(make_farey(make_slope(0, 1), make_slope(1, 0), make_slope(2, 1)), Error);
  EXPECT_EQ(to_string(make_slope(-2, -4)), "1/2");
}

TEST(Farey, BallSizes) {
  for (int r = 0; r <= 8; ++r) EXPECT_EQ(farey_ball(r).size(), 3 * (1 << r) - 2);
}

TEST(Models, MatchEngineBalls) {
  for (int r : {0, 1, 3, 6}) EXPECT_TRUE(rooted_tree_isomorphic(rooted_graph_of(ball(SurfaceSig(1, 1), r)), farey_ball(r)));
  EXPECT_TRUE(rooted_tree_isomorphic(rooted_graph_of(ball(SurfaceSig(0, 0, {1, 1}), 10)), annulus_model_ball(10)));
  EXPECT_FALSE(rooted_tree_isomorphic(farey_ball(3), farey_ball(4)));
  EXPECT_FALSE(rooted_tree_isomorphic(annulus_model_ball(5), farey_ball(2)));
}

TEST(Models, CycleIsNotATree) {
  RootedGraph g;
  g.adj = {{1, 2}, {0, 2}, {0, 1}};
  EXPECT_FALSE(rooted_tree_isomorphic(g, g));
}

TEST(Capping, FrozenRegressionVectors) {
  std::ifstream f(std::string(TEST_DATA_DIR) + "/cap_vectors.json");
  ASSERT_TRUE(f);
  const auto vectors = nlohmann::json::parse(f);
  const Ball b = ball(SurfaceSig(1, 0, {1}), 3);
  const auto img = cap_ball(b);
  ASSERT_EQ(vectors.size(), static_cast<std::size_t>(b.size()));
  for (const auto& v : vectors) {
    const int i = b.index_of(v.at("key").get<std::string>());
    EXPECT_EQ(to_string(img[i]), v.at("image").get<std::string>());
    EXPECT_EQ(b.vertices[i].dist, v.at("dist").get<int>());
  }
}

TEST(Capping, EdgesProjectToFareyEdgesOrPoints) {
  const Ball b = ball(SurfaceSig(1, 0, {1}), 4);
  const auto img = cap_ball(b);
  int moved = 0;
  for (const BallEdge& e : b.edges) {
    EXPECT_TRUE(farey_valid(img[e.u]));
    if (img[e.u] == img[e.v]) continue;
    ++moved;
    int shared = 0;
    for (const Slope& a : img[e.u].s)
      for (const Slope& c : img[e.v].s) shared += a == c;
    EXPECT_EQ(shared, 2);
  }
  EXPECT_GT(moved, 0);
}

TEST(Capping, BaseAndFlip) {
  const CappedTorus c = cap_base();
  EXPECT_TRUE(farey_valid(cap_boundary(c)));
  for (int id : c.tri.flippable_arcs().empty() ? std::vector<int>{} : std::vector<int>{c.tri.flippable_arcs()[0].id}) {
    const CappedTorus d = cap_flip(c, id);
    EXPECT_TRUE(farey_valid(cap_boundary(d)));
  }
}

TEST(Enumeration, ClassCounts) {
  EXPECT_EQ(enumerate_all(SurfaceSig(0, 4)).size(), 6u);
  EXPECT_EQ(enumerate_all(SurfaceSig(1, 0, {1})).size(), 1u);
  EXPECT_EQ(enumerate_all(SurfaceSig(1, 1)).size(), 1u);
  EXPECT_EQ(enumerate_all(SurfaceSig(0, 3)).size(), 2u);
  EXPECT_EQ(enumerate_all(SurfaceSig(0, 0, {1, 2})).size(), 2u);
  EXPECT_THROW(enumerate_all(SurfaceSig(1, 2), 10), Error);
}

TEST(Enumeration, ClosedUnderFlips) {
  for (const SurfaceSig& sig : {SurfaceSig(0, 4), SurfaceSig(0, 3), SurfaceSig(0, 0, {2, 2})}) {
    std::set<std::string> classes;
    const auto all = enumerate_all(sig);
    for (const Triangulation& t : all) classes.insert(t.canonical_class());
    EXPECT_EQ(classes.size(), all.size());
    for (const Triangulation& t : all)
      for (const ArcRef& a : t.flippable_arcs()) EXPECT_TRUE(classes.count(t.flip(a).canonical_class()));
  }
}

TEST(Enumeration, BallVerticesCoverAllClasses) {
  const Ball b = ball(SurfaceSig(0, 4), 4);
  std::set<std::string> seen;
  for (const BallVertex& v : b.vertices) seen.insert(v.state->tri.canonical_class());
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Enumeration, LabelledCountsMatchFiniteFlipGraphs) {
  for (const char* text : {"S0,3", "S0,0,(4)", "S0,0,(5)", "S0,0,(6)", "S0,1,(1)", "S0,1,(2)", "S0,1,(3)"}) {
    const SurfaceSig sig = SurfaceSig::parse(text);
    EXPECT_EQ(count_labelled(sig), ball(sig, 40).size()) << text;
  }
}

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <random>
#include <set>

#include "flipgraph/arcid.hpp"
#include "flipgraph/error.hpp"

using namespace flipgraph;

namespace {

using Vec = std::array<long long, 2>;

long long det(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }
bool same_slope(const Vec& a, const Vec& b) { return det(a, b) == 0; }

// Punctured-torus model: an arc is a primitive vector up to sign; two arcs
// meet |det| - 1 times away from the puncture, and a flip replaces the slope
// a of triangle {a, b, c} with whichever of b + c, b - c is not a.
struct TorusModel {
  std::map<int, Vec> slope;  // arc id -> slope
  std::vector<Vec> refs;

  static TorusModel make(const Triangulation& base, const std::array<Vec, 3>& assign) {
    TorusModel m;
    auto arcs = base.arcs();
    for (int i = 0; i < 3; ++i) m.slope[arcs[i]] = assign[i];
    for (int i = 0; i < 3; ++i) m.refs.push_back(assign[i]);
    for (int i = 0; i < 3; ++i) m.refs.push_back(m.flipped(arcs[i]));
    return m;
  }

  Vec flipped(int id) const {
    std::vector<Vec> others;
    for (const auto& [k, v] : slope)
      if (k != id) others.push_back(v);
    Vec s{others[0][0] + others[1][0], others[0][1] + others[1][1]};
    Vec d{others[0][0] - others[1][0], others[0][1] - others[1][1]};
    return same_slope(s, slope.at(id)) ? d : s;
  }

  std::vector<int> coords(int id) const {
    std::vector<int> out;
    for (const Vec& r : refs) out.push_back(static_cast<int>(std::llabs(det(slope.at(id), r))) - 1);
    return out;
  }
};

bool torus_model_agrees(const std::array<Vec, 3>& assign, int walks, int length) {
  const Triangulation base = base_triangulation(SurfaceSig(1, 1));
  std::mt19937 rng(2024);
  for (int w = 0; w < walks; ++w) {
    CoordState st = reference_state(base);
    TorusModel m = TorusModel::make(base, assign);
    for (int step = 0; step <= length; ++step) {
      for (int id : st.tri.arcs())
        if (coord_of(st, id) != m.coords(id)) return false;
      if (step == length) break;
      auto arcs = st.tri.flippable_arcs();
      const ArcRef a = arcs[rng() % arcs.size()];
      const Vec ns = m.flipped(a.id);
      const int nid = st.tri.next_arc_id();
      st = flip_state(st, a);
      m.slope.erase(a.id);
      m.slope[nid] = ns;
    }
  }
  return true;
}

CoordState walk(const SurfaceSig& sig, int steps, unsigned seed) {
  CoordState st = reference_state(base_triangulation(sig));
  std::mt19937 rng(seed);
  for (int i = 0; i < steps; ++i) {
    auto arcs = st.tri.flippable_arcs();
    st = flip_state(st, arcs[rng() % arcs.size()]);
  }
  return st;
}

}  // namespace

TEST(Coordinates, BaseShape) {
  for (const char* text : {"S1,1", "S0,4", "S0,0,(1,2)", "S1,2"}) {
    const Triangulation base = base_triangulation(SurfaceSig::parse(text));
    const auto coords = base_coords(base);
    const auto arcs = base.arcs();
    const std::size_t n = arcs.size() + base.flippable_arcs().size();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const ArcCoord& c = coords.at(arcs[i]);
      ASSERT_EQ(c.size(), n) << text;
      for (std::size_t r = 0; r < arcs.size(); ++r) EXPECT_EQ(c[r], r == i ? -1 : 0) << text;
    }
  }
}

TEST(Coordinates, OneFlipReplacementMarksItself) {
  const Triangulation base = base_triangulation(SurfaceSig(0, 5));
  const CoordState st = reference_state(base);
  const auto flippable = base.flippable_arcs();
  const std::size_t k = base.arcs().size();
  for (std::size_t j = 0; j < flippable.size(); ++j) {
    ArcCoord c = flip_coords(st, flippable[j]);
    EXPECT_EQ(c[k + j], -1);
    EXPECT_EQ(std::count(c.begin(), c.end(), -1), 1);
  }
}

TEST(Coordinates, MatchPuncturedTorusSlopes) {
  std::array<Vec, 3> assign{Vec{0, 1}, Vec{1, 0}, Vec{1, 1}};
  std::sort(assign.begin(), assign.end());
  bool any = false;
  do {
    any = any || torus_model_agrees(assign, 60, 14);
  } while (!any && std::next_permutation(assign.begin(), assign.end()));
  EXPECT_TRUE(any);
}

TEST(Coordinates, DisjointFlipsCommute) {
  for (const char* text : {"S0,5", "S1,2", "S0,0,(1,3)"}) {
    const CoordState st = walk(SurfaceSig::parse(text), 7, 3);
    auto arcs = st.tri.flippable_arcs();
    int squares = 0;
    for (const ArcRef& a : arcs)
      for (const ArcRef& b : arcs) {
        if (!(a < b) || st.tri.common_triangles(a, b) != 0) continue;
        const CoordState ab = flip_state(flip_state(st, a), b);
        const CoordState ba = flip_state(flip_state(st, b), a);
        EXPECT_EQ(tri_key(ab).text, tri_key(ba).text) << text;
        ++squares;
      }
    EXPECT_GT(squares, 0) << text;
  }
}

TEST(Coordinates, TracedPathsStayNormal) {
  for (const char* text : {"S0,4", "S1,0,(1)", "S1,2", "S0,2,(2)"})
    for (unsigned seed = 0; seed < 10; ++seed) EXPECT_TRUE(traced_paths_normal(walk(SurfaceSig::parse(text), 25, seed)));
}

TEST(Keys, RoundTripAndDigest) {
  EXPECT_EQ(digest_of(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(digest_of("a"), 0xaf63dc4c8601ec8cULL);
  const CoordState st = walk(SurfaceSig(1, 2), 12, 9);
  const TriKey k = tri_key(st);
  const TriKey back = tri_key_from_text(k.text);
  EXPECT_EQ(back.coords, k.coords);
  EXPECT_EQ(back.digest, k.digest);
  EXPECT_TRUE(std::is_sorted(k.coords.begin(), k.coords.end()));
  EXPECT_EQ(coord_text(parse_coord("3,-1,0")), "3,-1,0");
  EXPECT_THROW(parse_coord("3,x"), Error);
}

TEST(Keys, FlipBackRestoresKey) {
  for (const char* text : {"S0,4", "S1,1", "S1,2", "S0,0,(2,2)"}) {
    CoordState st = walk(SurfaceSig::parse(text), 10, 1);
    for (const ArcRef& a : st.tri.flippable_arcs()) {
      const CoordState u = flip_state(st, a);
      EXPECT_NE(tri_key(u).text, tri_key(st).text);
      EXPECT_EQ(tri_key(flip_state(u, ArcRef::interior(st.tri.next_arc_id()))).text, tri_key(st).text);
    }
  }
}

TEST(Exchange, TransverseComponentsSatisfyMaxPlus) {
  int applied = 0;
  for (const char* text : {"S0,5", "S1,2", "S0,4"})
    for (unsigned seed = 0; seed < 30; ++seed) {
      CoordState st = walk(SurfaceSig::parse(text), 8, seed);
      for (const ArcRef& a : st.tri.flippable_arcs()) {
        if (!ptolemy_consistent(st, a)) continue;
        ++applied;
        for (int r : ptolemy_defects(st, a)) EXPECT_TRUE(ends_in_quad(st, a, r)) << text << " component " << r;
      }
    }
  EXPECT_GT(applied, 0);
}

TEST(Exchange, FirstFlipOfBaseArcBreaksLiteralIdentity) {
  // Component j of the first flip of base arc j reads 0 + 1 on the left and
  // max(0, 0) on the right: the flipped arc is itself a reference arc.
  const Triangulation base = base_triangulation(SurfaceSig(0, 5));
  const CoordState st = reference_state(base);
  bool found = false;
  for (const ArcRef& a : base.flippable_arcs()) {
    auto d = ptolemy_defects(st, a);
    if (std::find(d.begin(), d.end(), a.id) != d.end()) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Flip, NotFlippableIsReported) {
  const CoordState st = reference_state(base_triangulation(SurfaceSig(0, 1, {1})));
  EXPECT_THROW(flip_state(st, ArcRef::interior(st.tri.arcs()[0])), Error);
}

TEST(Keys, PentagonWalkReturns) {
  const CoordState start = reference_state(base_triangulation(SurfaceSig(0, 0, {1, 2})));
  auto arcs = start.tri.flippable_arcs();
  int pentagons = 0;
  for (const ArcRef& a : arcs)
    for (const ArcRef& b : arcs) {
      if (a == b || start.tri.common_triangles(a, b) != 1) continue;
      CoordState cur = start;
      ArcRef x = a, y = b;
      std::set<std::string> seen;
      for (int i = 0; i < 5; ++i) {
        const ArcRef fresh = ArcRef::interior(cur.tri.next_arc_id());
        cur = flip_state(cur, x);
        seen.insert(tri_key(cur).text);
        x = y;
        y = fresh;
      }
      EXPECT_EQ(tri_key(cur).text, tri_key(start).text);
      EXPECT_EQ(seen.size(), 5u);
      ++pentagons;
    }
  EXPECT_GT(pentagons, 0);
}

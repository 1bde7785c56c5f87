#include "flipgraph/oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "flipgraph/error.hpp"

namespace flipgraph::oracles {

Slope make_slope(long long p, long long q) {
  if (p == 0 && q == 0) throw Error(ErrorKind::Precondition, "zero slope");
  long long g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

std::string to_string(const Slope& s) { return std::to_string(s.p) + "/" + std::to_string(s.q); }

namespace {

long long det(const Slope& a, const Slope& b) { return a.p * b.q - a.q * b.p; }

}  // namespace

FareyVertex make_farey(Slope a, Slope b, Slope c) {
  FareyVertex v{{a, b, c}};
  std::sort(v.s.begin(), v.s.end());
  if (!farey_valid(v)) throw Error(ErrorKind::Precondition, "not a Farey triangle: " + to_string(v));
  return v;
}

bool farey_valid(const FareyVertex& v) {
  for (int i = 0; i < 3; ++i)
    if (std::llabs(det(v.s[i], v.s[(i + 1) % 3])) != 1) return false;
  return true;
}

std::array<FareyVertex, 3> farey_neighbors(const FareyVertex& v) {
  std::array<FareyVertex, 3> out;
  for (int drop = 0; drop < 3; ++drop) {
    const Slope& a = v.s[(drop + 1) % 3];
    const Slope& b = v.s[(drop + 2) % 3];
    Slope plus = make_slope(a.p + b.p, a.q + b.q);
    Slope minus = make_slope(a.p - b.p, a.q - b.q);
    out[drop] = make_farey(a, b, plus == v.s[drop] ? minus : plus);
  }
  return out;
}

FareyVertex farey_root() { return make_farey({0, 1}, {1, 0}, {1, 1}); }

std::string to_string(const FareyVertex& v) {
  return "{" + to_string(v.s[0]) + "," + to_string(v.s[1]) + "," + to_string(v.s[2]) + "}";
}

int RootedGraph::edge_count() const {
  int n = 0;
  for (const auto& a : adj) n += static_cast<int>(a.size());
  return n / 2;
}

RootedGraph farey_ball(int r) {
  std::map<FareyVertex, int> index;
  std::vector<FareyVertex> verts{farey_root()};
  std::vector<int> dist{0};
  index[verts[0]] = 0;
  RootedGraph g;
  g.adj.emplace_back();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (dist[i] == r) continue;
    for (const FareyVertex& w : farey_neighbors(verts[i])) {
      auto [it, fresh] = index.emplace(w, static_cast<int>(verts.size()));
      if (fresh) {
        verts.push_back(w);
        dist.push_back(dist[i] + 1);
        g.adj.emplace_back();
      }
      int j = it->second;
      if (std::find(g.adj[i].begin(), g.adj[i].end(), j) == g.adj[i].end()) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(static_cast<int>(i));
      }
    }
  }
  return g;
}

RootedGraph annulus_model_ball(int r) {
  // Vertex k + r stands for the winding pair {k, k+1}.
  RootedGraph g;
  g.root = r;
  g.adj.resize(2 * r + 1);
  for (int k = -r; k < r; ++k) {
    g.adj[k + r].push_back(k + r + 1);
    g.adj[k + r + 1].push_back(k + r);
  }
  return g;
}

RootedGraph rooted_graph_of(const Ball& b) {
  RootedGraph g;
  g.root = b.root;
  g.adj = b.adj;
  return g;
}

namespace {

// AHU code of the tree hanging from v; empty optional when not a tree.
std::optional<std::vector<int>> tree_parents(const RootedGraph& g) {
  if (g.edge_count() != g.size() - 1) return std::nullopt;
  std::vector<int> parent(g.size(), -2);
  parent[g.root] = -1;
  std::deque<int> queue{g.root};
  int seen = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.adj[v]) {
      if (parent[w] != -2) continue;
      parent[w] = v;
      queue.push_back(w);
      ++seen;
    }
  }
  if (seen != g.size()) return std::nullopt;
  return parent;
}

std::string ahu(const RootedGraph& g, const std::vector<int>& parent, int v) {
  std::vector<std::string> kids;
  for (int w : g.adj[v])
    if (parent[w] == v) kids.push_back(ahu(g, parent, w));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (auto& k : kids) out += k;
  return out + ")";
}

}  // namespace

bool rooted_tree_isomorphic(const RootedGraph& a, const RootedGraph& b) {
  if (a.size() != b.size()) return false;
  auto pa = tree_parents(a), pb = tree_parents(b);
  if (!pa || !pb) return false;
  return ahu(a, *pa, a.root) == ahu(b, *pb, b.root);
}

// ---- boundary capping ----

namespace {

using Vec = std::vector<long long>;

// Z-basis of {x : M x = 0} by unimodular column reduction.
std::vector<Vec> integer_kernel(std::vector<Vec> m, int cols) {
  std::vector<Vec> u(cols, Vec(cols, 0));  // columns of the transform, stored as u[col]
  for (int i = 0; i < cols; ++i) u[i][i] = 1;
  auto col_op = [&](int dst, int src, long long k) {  // col dst -= k * col src
    for (auto& row : m) row[dst] -= k * row[src];
    for (int i = 0; i < cols; ++i) u[dst][i] -= k * u[src][i];
  };
  auto col_swap = [&](int a, int b) {
    for (auto& row : m) std::swap(row[a], row[b]);
    std::swap(u[a], u[b]);
  };
  int pivot_col = 0;
  for (std::size_t r = 0; r < m.size() && pivot_col < cols; ++r) {
    while (true) {
      int best = -1;
      for (int c = pivot_col; c < cols; ++c)
        if (m[r][c] != 0 && (best < 0 || std::llabs(m[r][c]) < std::llabs(m[r][best]))) best = c;
      if (best < 0) break;
      col_swap(pivot_col, best);
      bool done = true;
      for (int c = pivot_col + 1; c < cols; ++c) {
        if (m[r][c] == 0) continue;
        col_op(c, pivot_col, m[r][c] / m[r][pivot_col]);
        if (m[r][c] != 0) done = false;
      }
      if (done) {
        ++pivot_col;
        break;
      }
    }
  }
  std::vector<Vec> out;
  for (int c = pivot_col; c < cols; ++c) out.push_back(u[c]);
  return out;
}

}  // namespace

Slope CappedTorus::slope_of(int arc_id) const {
  auto [s, q] = tri.slots_of(arc_id);
  (void)q;
  if (cls[s][0] == 0 && cls[s][1] == 0)
    throw Error(ErrorKind::ProjectionUndefined, "arc " + std::to_string(arc_id) + " is null-homologous after capping");
  if (std::gcd(cls[s][0], cls[s][1]) != 1)
    throw Error(ErrorKind::ProjectionUndefined, "arc " + std::to_string(arc_id) + " has a non-primitive class");
  return make_slope(cls[s][0], cls[s][1]);
}

CappedTorus cap_base() {
  CappedTorus c;
  c.tri = base_triangulation(SurfaceSig(1, 0, {1}));
  const Triangulation& t = c.tri;
  std::vector<int> arcs = t.arcs();
  std::map<int, int> col;
  for (std::size_t k = 0; k < arcs.size(); ++k) col[arcs[k]] = static_cast<int>(k);
  auto sign = [&](int s) { return s < t.partner(s) ? 1 : -1; };
  std::vector<Vec> m;
  for (int tri = 0; tri < t.triangle_count(); ++tri) {
    Vec row(arcs.size(), 0);
    for (int i = 0; i < 3; ++i) {
      int s = 3 * tri + i;
      if (!t.is_boundary_slot(s)) row[col[t.arc_of(s)]] += sign(s);
    }
    m.push_back(row);
  }
  auto basis = integer_kernel(m, static_cast<int>(arcs.size()));
  if (basis.size() != 2)
    throw Error(ErrorKind::ProjectionUndefined, "capped homology does not have rank 2");
  c.cls.assign(t.slot_count(), {0, 0});
  for (int s = 0; s < t.slot_count(); ++s) {
    if (t.is_boundary_slot(s)) continue;
    int k = col[t.arc_of(s)];
    c.cls[s] = {sign(s) * basis[0][k], sign(s) * basis[1][k]};
  }
  return c;
}

CappedTorus cap_flip(const CappedTorus& c, int arc_id) {
  auto [s1, s2] = c.tri.slots_of(arc_id);
  CappedTorus out;
  out.tri = c.tri.flip(arc_id);
  const int t1 = s1 / 3, i1 = s1 % 3, t2 = s2 / 3, i2 = s2 % 3;
  auto at = [](int t, int i) { return 3 * t + (i % 3); };
  std::vector<int> moved(c.tri.slot_count());
  std::iota(moved.begin(), moved.end(), 0);
  moved[at(t1, i1 + 1)] = at(t2, i2 + 2);
  moved[at(t1, i1 + 2)] = at(t1, i1 + 1);
  moved[at(t2, i2 + 1)] = at(t1, i1 + 2);
  moved[at(t2, i2 + 2)] = at(t2, i2 + 1);
  out.cls.assign(c.cls.size(), {0, 0});
  for (int s = 0; s < c.tri.slot_count(); ++s)
    if (s != s1 && s != s2) out.cls[moved[s]] = c.cls[s];
  for (int k = 0; k < 2; ++k) {
    out.cls[s1][k] = -(out.cls[at(t1, i1 + 1)][k] + out.cls[at(t1, i1 + 2)][k]);
    out.cls[s2][k] = -out.cls[s1][k];
    if (out.cls[s2][k] + out.cls[at(t2, i2 + 1)][k] + out.cls[at(t2, i2 + 2)][k] != 0)
      throw Error(ErrorKind::ProjectionUndefined, "homology relation broken by flip");
  }
  return out;
}

FareyVertex cap_boundary(const CappedTorus& c) {
  std::vector<Slope> slopes;
  for (int id : c.tri.arcs()) slopes.push_back(c.slope_of(id));
  std::sort(slopes.begin(), slopes.end());
  slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());
  if (slopes.size() != 3)
    throw Error(ErrorKind::ProjectionUndefined, std::to_string(slopes.size()) + " distinct slopes after capping");
  FareyVertex v{{slopes[0], slopes[1], slopes[2]}};
  if (!farey_valid(v)) throw Error(ErrorKind::ProjectionUndefined, "capped slopes " + to_string(v) + " are not a Farey triangle");
  return v;
}

std::vector<FareyVertex> cap_ball(const Ball& b) {
  if (b.surface != SurfaceSig(1, 0, {1}))
    throw Error(ErrorKind::Precondition, "capping needs a ball of S1,0,(1)");
  std::vector<std::optional<CappedTorus>> capped(b.size());
  std::vector<int> order(b.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return b.vertices[x].dist < b.vertices[y].dist; });
  CappedTorus root = cap_base();
  if (!b.vertices[b.root].state || !(b.vertices[b.root].state->tri == root.tri))
    throw Error(ErrorKind::Precondition, "ball is not rooted at the base triangulation");
  capped[b.root] = root;
  for (int v : order) {
    if (capped[v]) continue;
    const Triangulation& tv = b.vertices[v].state->tri;
    for (int u : b.adj[v]) {
      if (!capped[u] || b.vertices[u].dist != b.vertices[v].dist - 1) continue;
      const Triangulation& tu = capped[u]->tri;
      for (int id : tu.arcs()) {
        if (tv.has_arc(id) || !tu.is_flippable(id)) continue;
        CappedTorus next = cap_flip(*capped[u], id);
        if (next.tri == tv) capped[v] = std::move(next);
        break;
      }
      if (capped[v]) break;
    }
    if (!capped[v]) throw Error(ErrorKind::ProjectionUndefined, "no discovery parent for '" + b.key(v) + "'");
  }
  std::vector<FareyVertex> out;
  for (auto& c : capped) out.push_back(cap_boundary(*c));
  return out;
}

// ---- exhaustive gluings ----

namespace {

// Calls f(pairing) for every involution on 3k slots with exactly `unpaired`
// fixed (boundary) slots.
void for_each_gluing(int k, int unpaired, long long budget,
                     const std::function<void(const std::vector<int>&)>& f) {
  const int n = 3 * k;
  std::vector<int> pair(n, -2);
  long long visited = 0;
  std::function<void(int, int)> rec = [&](int from, int left) {
    int s = from;
    while (s < n && pair[s] != -2) ++s;
    if (s == n) {
      if (left == 0) {
        if (++visited > budget)
          throw Error(ErrorKind::ResourceLimit, "gluing enumeration budget exceeded");
        f(pair);
      }
      return;
    }
    int free_after = 0;
    for (int q = s; q < n; ++q) free_after += pair[q] == -2 ? 1 : 0;
    if (left > 0) {
      pair[s] = Triangulation::kBoundary;
      rec(s + 1, left - 1);
      pair[s] = -2;
    }
    if (free_after - left >= 2) {
      for (int q = s + 1; q < n; ++q) {
        if (pair[q] != -2) continue;
        pair[s] = q;
        pair[q] = s;
        rec(s + 1, left);
        pair[s] = pair[q] = -2;
      }
    }
  };
  rec(0, unpaired);
}

std::optional<Triangulation> try_gluing(int k, const std::vector<int>& pair, const SurfaceSig& sig) {
  try {
    Triangulation t = Triangulation::from_pairing(k, pair);
    if (t.signature() == sig) return t;
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

std::vector<Triangulation> enumerate_all(const SurfaceSig& sig, long long budget) {
  const int k = triangle_count(sig);
  if (k == 0) throw Error(ErrorKind::NoTriangulation, sig.str() + " has no triangles");
  std::map<std::string, Triangulation> classes;
  for_each_gluing(k, sig.boundary_points(), budget, [&](const std::vector<int>& pair) {
    if (auto t = try_gluing(k, pair, sig)) classes.emplace(t->canonical_class(), *t);
  });
  std::vector<Triangulation> out;
  for (auto& [code, t] : classes) out.push_back(t);
  return out;
}

long long count_labelled(const SurfaceSig& sig, long long budget) {
  const int k = triangle_count(sig);
  if (k == 0) throw Error(ErrorKind::NoTriangulation, sig.str() + " has no triangles");
  std::set<std::string> codes;
  for_each_gluing(k, sig.boundary_points(), budget, [&](const std::vector<int>& pair) {
    auto t = try_gluing(k, pair, sig);
    if (!t) return;
    const std::vector<int> cv = t->corner_vertices();
    const int nv = t->vertex_count();
    // Boundary cycles as vertex sequences in boundary direction.
    std::vector<int> next_on_boundary(nv, -1);
    for (int s : t->boundary_slots()) next_on_boundary[cv[s]] = cv[3 * (s / 3) + (s % 3 + 1) % 3];
    std::vector<int> interior;
    std::vector<std::vector<int>> cycles;
    std::vector<bool> seen(nv, false);
    for (int v = 0; v < nv; ++v) {
      if (next_on_boundary[v] < 0) {
        interior.push_back(v);
        continue;
      }
      if (seen[v]) continue;
      std::vector<int> cyc;
      for (int w = v; !seen[w]; w = next_on_boundary[w]) {
        seen[w] = true;
        cyc.push_back(w);
      }
      cycles.push_back(cyc);
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size(); });
    // Labels: interior punctures 0..n-1; boundary component j (in sorted
    // order) at position i gets 1000*(j+1)+i.
    std::vector<int> label(nv, -1);
    std::vector<int> perm(interior.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> comp_order(cycles.size());
    std::function<void(std::size_t)> place_boundary = [&](std::size_t j) {
      if (j == cycles.size()) {
        std::vector<int> corner(cv.size());
        for (std::size_t c = 0; c < cv.size(); ++c) corner[c] = label[cv[c]];
        codes.insert(t->canonical_labelled(corner, false));
        return;
      }
      const auto& cyc = cycles[comp_order[j]];
      for (std::size_t rot = 0; rot < cyc.size(); ++rot) {
        for (std::size_t i = 0; i < cyc.size(); ++i)
          label[cyc[(i + rot) % cyc.size()]] = 1000 * static_cast<int>(j + 1) + static_cast<int>(i);
        place_boundary(j + 1);
      }
    };
    do {
      for (std::size_t i = 0; i < interior.size(); ++i) label[interior[i]] = perm[i];
      std::iota(comp_order.begin(), comp_order.end(), 0);
      do {
        bool sizes_match = true;
        for (std::size_t j = 0; j < cycles.size(); ++j)
          sizes_match &= cycles[comp_order[j]].size() == cycles[j].size();
        if (sizes_match) place_boundary(0);
      } while (std::next_permutation(comp_order.begin(), comp_order.end()));
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return static_cast<long long>(codes.size());
}

}  // namespace flipgraph::oracles

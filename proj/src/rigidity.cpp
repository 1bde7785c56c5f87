#include "flipgraph/rigidity.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <nlohmann/json.hpp>
#include <set>

#include "flipgraph/error.hpp"

namespace flipgraph {

namespace {

// Domain vertex v's neighbours, by the arc flipped to reach them (-1 when the
// flip leaves the domain).
class DomainArcs {
 public:
  explicit DomainArcs(const Ball& d) : d_(d), cache_(d.size()) {}

  const std::map<int, int>& of(int v) {
    auto& slot = cache_[v];
    if (slot) return *slot;
    const auto& st = d_.vertices[v].state;
    if (!st) throw Error(ErrorKind::Precondition, "domain vertex without a triangulation state");
    std::map<int, int> out;
    for (const ArcRef& a : st->tri.flippable_arcs()) {
      auto w = d_.find(tri_key(flip_state(*st, a)).text);
      out[a.id] = w && d_.adjacent(v, *w) ? *w : -1;
    }
    slot = std::move(out);
    return *slot;
  }

 private:
  const Ball& d_;
  std::vector<std::optional<std::map<int, int>>> cache_;
};

std::vector<int> canonical_cycle(std::vector<int> c) {
  auto m = std::min_element(c.begin(), c.end()) - c.begin();
  std::rotate(c.begin(), c.begin() + m, c.end());
  if (c.size() > 2 && c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
  return c;
}

std::vector<std::vector<int>> domain_cycles(const Ball& d) {
  std::set<std::vector<int>> out;
  for (int v = 0; v < d.size(); ++v) {
    const auto& st = d.vertices[v].state;
    if (!st) throw Error(ErrorKind::Precondition, "domain vertex without a triangulation state");
    auto arcs = st->tri.flippable_arcs();
    for (std::size_t i = 0; i < arcs.size(); ++i)
      for (std::size_t j = i + 1; j < arcs.size(); ++j) {
        if (st->tri.common_triangles(arcs[i], arcs[j]) == 2) continue;
        Path2Class pc = classify_path2(*st, arcs[i], arcs[j]);
        std::vector<int> idx;
        for (const auto& k : pc.cycle) {
          auto w = d.find(k);
          if (!w) break;
          idx.push_back(*w);
        }
        if (idx.size() != pc.cycle.size()) continue;
        bool closed = true;
        for (std::size_t k = 0; k < idx.size(); ++k)
          closed &= d.adjacent(idx[k], idx[(k + 1) % idx.size()]);
        if (closed) out.insert(canonical_cycle(idx));
      }
  }
  return {out.begin(), out.end()};
}

[[noreturn]] void contradiction(const std::string& what) {
  throw Error(ErrorKind::Contradiction, what);
}

class Closure {
 public:
  Closure(PartialMap& pm, const ClosureOptions& opts)
      : pm_(pm), d_(*pm.domain), h_(*pm.host), opts_(opts), arcs_(d_) {
    for (auto [u, x] : pm_.assignment) {
      if (!used_.insert(x).second) contradiction("seed is not injective at host '" + h_.key(x) + "'");
    }
    check_edges();
  }

  void run() {
    if (opts_.use_r1) cycles_ = domain_cycles(d_);
    while (true) {
      if (opts_.use_r1 && r1_pass()) continue;
      if (opts_.use_r2 && r2_once()) continue;
      break;
    }
    check_edges();
  }

 private:
  bool assigned(int v) const { return pm_.assignment.count(v) > 0; }
  int img(int v) const { return pm_.assignment.at(v); }

  void assign(int v, int x, const std::string& rule, std::vector<std::string> witness) {
    if (assigned(v)) {
      if (img(v) != x)
        contradiction(rule + " maps '" + d_.key(v) + "' to '" + h_.key(x) + "' but it is already mapped to '" +
                      h_.key(img(v)) + "'");
      return;
    }
    if (used_.count(x)) contradiction(rule + " would reuse host vertex '" + h_.key(x) + "'");
    pm_.assignment[v] = x;
    used_.insert(x);
    pm_.trace.push_back({rule, d_.key(v), h_.key(x), std::move(witness)});
  }

  void check_edges() const {
    for (const BallEdge& e : d_.edges) {
      auto a = pm_.assignment.find(e.u), b = pm_.assignment.find(e.v);
      if (a == pm_.assignment.end() || b == pm_.assignment.end()) continue;
      if (!h_.adjacent(a->second, b->second))
        contradiction("edge '" + d_.key(e.u) + "' - '" + d_.key(e.v) + "' is not preserved");
    }
  }

  bool r1_pass() {
    bool changed = false;
    for (const auto& c : cycles_) {
      const int len = static_cast<int>(c.size());
      for (int dir = 0; dir < 2; ++dir)
        for (int i = 0; i < len; ++i) {
          auto at = [&](int k) { return dir == 0 ? c[((i + k) % len + len) % len] : c[((i - k) % len + len) % len]; };
          if (!assigned(at(0)) || !assigned(at(1)) || !assigned(at(2))) continue;
          bool missing = false;
          for (int k = 3; k < len; ++k) missing |= !assigned(at(k));
          if (!missing) continue;
          auto host_cycles = cycles_through({img(at(0)), img(at(1)), img(at(2))}, len, h_);
          std::vector<std::vector<int>> same;
          for (auto& hc : host_cycles)
            if (static_cast<int>(hc.size()) == len) same.push_back(hc);
          if (same.size() != 1)
            contradiction("R1 at '" + d_.key(at(1)) + "': " + std::to_string(same.size()) + " host " +
                          std::to_string(len) + "-cycles");
          // Host cycle lists img(at1), img(at2), ..., img(at0).
          std::vector<std::string> witness;
          for (int x : same[0]) witness.push_back(h_.key(x));
          const std::string rule = len == 4 ? "R1-4" : "R1-5";
          for (int k = 3; k < len; ++k) assign(at(k), same[0][k - 1], rule, witness);
          changed = true;
        }
    }
    return changed;
  }

  bool r2_once() {
    for (const auto& [t, ft] : pm_.assignment) {
      if (opts_.r2_site >= 0 && t != opts_.r2_site) continue;
      const auto& st = *d_.vertices[t].state;
      const auto& nb = arcs_.of(t);
      for (const auto& [a, ta] : nb) {
        if (ta < 0 || assigned(ta)) continue;
        for (const auto& [c, tc] : nb) {
          if (tc < 0 || !assigned(tc) || c == a) continue;
          if (st.tri.common_triangles(ArcRef::interior(a), ArcRef::interior(c)) != 1) continue;
          for (const auto& [e, te] : nb) {
            if (te < 0 || !assigned(te) || e == a || e == c) continue;
            if (st.tri.common_triangles(ArcRef::interior(a), ArcRef::interior(e)) != 0) continue;
            const int fc = img(tc), fe = img(te);
            if (!h_.complete(ft))
              throw Error(ErrorKind::InsufficientRadius, "R2 site '" + h_.key(ft) + "' is on the host frontier");
            std::vector<int> cands;
            for (int w : h_.adj[ft]) {
              if (used_.count(w)) continue;
              bool five = false, four = false;
              for (auto& cy : cycles_through({w, ft, fc}, 5, h_)) five |= cy.size() == 5;
              for (auto& cy : cycles_through({w, ft, fe}, 4, h_)) four |= cy.size() == 4;
              if (five && four) cands.push_back(w);
            }
            if (cands.size() != 1)
              contradiction("R2 at '" + d_.key(t) + "': " + std::to_string(cands.size()) + " candidates");
            assign(ta, cands[0], "R2", {h_.key(ft), h_.key(fc), h_.key(fe)});
            return true;
          }
        }
      }
    }
    return false;
  }

  PartialMap& pm_;
  const Ball& d_;
  const Ball& h_;
  ClosureOptions opts_;
  DomainArcs arcs_;
  std::set<int> used_;
  std::vector<std::vector<int>> cycles_;
};

}  // namespace

PartialMap rigid_closure(PartialMap pm, const ClosureOptions& opts) {
  if (!pm.domain || !pm.host) throw Error(ErrorKind::Precondition, "closure needs a domain and a host");
  if (pm.assignment.empty()) throw Error(ErrorKind::Precondition, "closure needs a nonempty seed");
  Closure(pm, opts).run();
  return pm;
}

PartialMap identity_seed(const Ball& domain, const Ball& host, const std::vector<int>& vs) {
  PartialMap pm;
  pm.domain = &domain;
  pm.host = &host;
  for (int v : vs) pm.assignment[v] = host.index_of(domain.key(v));
  return pm;
}

bool replay_agrees(const PartialMap& pm, const std::map<std::string, std::string>& reference) {
  for (const ForcedStep& s : pm.trace) {
    auto it = reference.find(s.forced);
    if (it == reference.end() || it->second != s.image) return false;
  }
  return true;
}

std::string trace_json(const PartialMap& pm) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const ForcedStep& s : pm.trace)
    j.push_back({{"rule", s.rule}, {"forced", s.forced}, {"image", s.image}, {"witness", s.witness}});
  return j.dump(1) + "\n";
}

Ball induced_subgraph(const Ball& b, const std::vector<int>& keep_in) {
  std::vector<int> keep = keep_in;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<int> renum(b.size(), -1);
  Ball out;
  out.surface = b.surface;
  out.radius = b.radius;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    renum[keep[i]] = static_cast<int>(i);
    out.vertices.push_back(b.vertices[keep[i]]);
    out.complete_to = std::max(out.complete_to, b.vertices[keep[i]].dist);
  }
  out.root = renum[b.root] >= 0 ? renum[b.root] : 0;
  for (const BallEdge& e : b.edges)
    if (renum[e.u] >= 0 && renum[e.v] >= 0) out.edges.push_back({renum[e.u], renum[e.v], e.removed, e.added});
  out.reindex();
  return out;
}

// ---- Case-3 configurations ----

namespace {

ArcRef side_ref(const Triangulation& t, int slot) {
  return t.is_boundary_slot(slot) ? ArcRef::boundary(slot) : ArcRef::interior(t.arc_of(slot));
}

}  // namespace

ThirdSides third_sides(const Triangulation& t, ArcRef a, ArcRef b) {
  if (!a.is_interior() || !b.is_interior() || t.common_triangles(a, b) != 2)
    throw Error(ErrorKind::Precondition, "arcs do not border two common triangles");
  auto sa = t.slots_of(a.id), sb = t.slots_of(b.id);
  ThirdSides out;
  int orient[2];
  for (int k = 0; k < 2; ++k) {
    const int tri = Triangulation::tri_of(sa[k]);
    const int ia = Triangulation::side_of(sa[k]);
    const int slot_b = Triangulation::tri_of(sb[0]) == tri ? sb[0] : sb[1];
    const int ib = Triangulation::side_of(slot_b);
    const int third = Triangulation::slot_at(tri, 3 - ia - ib);
    (k == 0 ? out.c : out.d) = side_ref(t, third);
    orient[k] = ib == (ia + 1) % 3 ? 1 : -1;
  }
  out.second_arrangement = orient[0] == orient[1];
  return out;
}

std::vector<std::string> BSet::keys() const {
  std::vector<std::string> out;
  for (const auto& [role, k] : roles) out.push_back(k);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BSet build_bset(const CoordState& t, ArcRef a, ArcRef b, const Ball* context) {
  const Triangulation& tri = t.tri;
  ThirdSides ts = third_sides(tri, a, b);
  auto sa = tri.slots_of(a.id);
  const int ta1 = Triangulation::tri_of(sa[0]), ta2 = Triangulation::tri_of(sa[1]);
  std::optional<ArcRef> c, e;
  if (!(ts.c == ts.d)) {
    for (int k = 0; k < 2 && !e; ++k) {
      ArcRef x = k == 0 ? ts.c : ts.d, other = k == 0 ? ts.d : ts.c;
      if (!x.is_interior()) continue;
      for (int slot : tri.slots_of(x.id)) {
        const int delta = Triangulation::tri_of(slot);
        if (delta == ta1 || delta == ta2 || tri.is_folded(delta)) continue;
        for (int i = 0; i < 3 && !e; ++i) {
          ArcRef r = side_ref(tri, Triangulation::slot_at(delta, i));
          if (!r.is_interior() || r == x || r == other) continue;
          c = x;
          e = r;
        }
      }
    }
  }
  if (!e)
    throw Error(ErrorKind::ConfigNotFound, "no admissible c and e around arcs " + std::to_string(a.id) +
                                               ", " + std::to_string(b.id));
  BSet out;
  out.a = a;
  out.b = b;
  out.c = *c;
  out.e = *e;
  auto expect = [&](ArcRef x, ArcRef y, Path2Class::Kind kind) {
    Path2Class pc = classify_path2(t, x, y, context);
    if (pc.kind != kind)
      throw Error(ErrorKind::Contradiction, "B-set cycle has unexpected type " + to_string(pc.kind));
    return pc.cycle;
  };
  auto ae = expect(a, *e, Path2Class::Kind::FourCycle);
  auto be = expect(b, *e, Path2Class::Kind::FourCycle);
  auto ac = expect(a, *c, Path2Class::Kind::FiveCycle);
  auto bc = expect(b, *c, Path2Class::Kind::FiveCycle);
  auto ce = expect(*c, *e, Path2Class::Kind::FiveCycle);
  out.roles = {{"T", ae[0]},   {"T_a", ae[1]},  {"T_ea", ae[2]}, {"T_e", ae[3]}, {"T_b", be[1]},
               {"T_eb", be[2]}, {"T_ac", ac[2]}, {"T_ca", ac[3]}, {"T_c", ac[4]}, {"T_bc", bc[2]},
               {"T_cb", bc[3]}, {"T_ce", ce[2]}, {"T_ec", ce[3]}};
  out.four_cycles = {ae, be};
  out.five_cycles = {ac, bc, ce};
  return out;
}

DoubleTriangleReport check_double_triangle_pairs(const SurfaceSig& sig, const std::vector<CoordState>& sample) {
  if (is_simple(sig)) throw Error(ErrorKind::Precondition, sig.str() + " is simple");
  DoubleTriangleReport rep;
  for (const CoordState& st : sample) {
    const Triangulation& t = st.tri;
    ++rep.triangulations;
    auto arcs = t.flippable_arcs();
    for (const ArcRef& a : arcs)
      for (const ArcRef& b : arcs) {
        if (a == b || t.common_triangles(a, b) != 2) continue;
        ++rep.pairs;
        ThirdSides ts = third_sides(t, a, b);
        auto fail = [&](const std::string& why) {
          rep.violations.push_back({tri_key(st).text, a.id, b.id, why});
        };
        if (ts.c == ts.d) {
          fail("c equals d");
          continue;
        }
        auto sa = t.slots_of(a.id);
        const int ta1 = Triangulation::tri_of(sa[0]), ta2 = Triangulation::tri_of(sa[1]);
        bool found = false;
        for (ArcRef x : {ts.c, ts.d}) {
          if (!x.is_interior()) continue;
          for (int slot : t.slots_of(x.id)) {
            const int delta = Triangulation::tri_of(slot);
            if (delta == ta1 || delta == ta2 || t.is_folded(delta)) continue;
            for (int i = 0; i < 3; ++i) {
              ArcRef r = side_ref(t, Triangulation::slot_at(delta, i));
              if (r.is_interior() && !(r == ts.c) && !(r == ts.d)) found = true;
            }
          }
        }
        if (!found) fail("neither c nor d borders a suitable second triangle");
      }
  }
  return rep;
}

std::vector<CoordState> bfs_sample(const SurfaceSig& sig, int count) {
  for (int r = 1;; ++r) {
    Ball b = ball(sig, r);
    if (b.size() >= count || b.complete_to == r) {
      std::vector<int> order(b.size());
      for (int i = 0; i < b.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](int x, int y) { return b.vertices[x].dist < b.vertices[y].dist; });
      std::vector<CoordState> out;
      for (int i = 0; i < std::min(count, b.size()); ++i) out.push_back(*b.vertices[order[i]].state);
      return out;
    }
  }
}

// ---- non-rigidity witnesses ----

SimpleGraph path_graph(int n) {
  SimpleGraph g;
  g.adj.resize(n);
  for (int i = 0; i + 1 < n; ++i) {
    g.adj[i].push_back(i + 1);
    g.adj[i + 1].push_back(i);
  }
  return g;
}

std::vector<std::vector<int>> search_injective_homs(const SimpleGraph& dom, const Ball& host,
                                                    const std::map<int, int>& seed, int limit) {
  const int n = dom.size();
  std::vector<std::vector<int>> out;
  if (n == 0 || limit <= 0) return out;
  // Vertex order: BFS from the seeded vertices (or vertex 0).
  std::vector<int> order, parent(n, -1);
  std::vector<char> placed(n, 0);
  std::deque<int> queue;
  for (auto [v, x] : seed) {
    if (v < 0 || v >= n || x < 0 || x >= host.size()) throw Error(ErrorKind::Precondition, "seed out of range");
    placed[v] = 1;
    queue.push_back(v);
  }
  if (queue.empty()) {
    placed[0] = 1;
    queue.push_back(0);
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int w : dom.adj[v])
      if (!placed[w]) {
        placed[w] = 1;
        parent[w] = v;
        queue.push_back(w);
      }
  }
  if (static_cast<int>(order.size()) != n) throw Error(ErrorKind::Precondition, "domain is not connected");

  std::vector<int> img(n, -1);
  std::set<int> used;
  for (auto [v, x] : seed) {
    img[v] = x;
    if (!used.insert(x).second) throw Error(ErrorKind::Precondition, "seed is not injective");
  }
  for (auto [v, x] : seed)
    for (int w : dom.adj[v])
      if (img[w] >= 0 && !host.adjacent(x, img[w])) return out;

  auto edge_ok = [&](int x, int y) {
    if (!host.complete(x) && !host.complete(y))
      throw Error(ErrorKind::InsufficientRadius, "adjacency between two frontier host vertices");
    return host.adjacent(x, y);
  };
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (static_cast<int>(out.size()) >= limit) return;
    if (k == order.size()) {
      out.push_back(img);
      return;
    }
    const int v = order[k];
    if (img[v] >= 0) {
      rec(k + 1);
      return;
    }
    std::vector<int> cands;
    if (parent[v] < 0) {
      for (int x = 0; x < host.size(); ++x) cands.push_back(x);
    } else {
      const int px = img[parent[v]];
      if (!host.complete(px))
        throw Error(ErrorKind::InsufficientRadius, "extension reaches the host frontier at '" + host.key(px) + "'");
      cands = host.adj[px];
    }
    for (int x : cands) {
      if (used.count(x)) continue;
      bool ok = true;
      for (int w : dom.adj[v])
        if (img[w] >= 0 && !edge_ok(img[w], x)) ok = false;
      if (!ok) continue;
      img[v] = x;
      used.insert(x);
      rec(k + 1);
      used.erase(x);
      img[v] = -1;
      if (static_cast<int>(out.size()) >= limit) return;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

int Ladder::vertex_count() const {
  std::set<std::string> s(gamma.begin(), gamma.end());
  s.insert(gamma_e.begin(), gamma_e.end());
  return static_cast<int>(s.size());
}

namespace {

// Walk along the annulus line: each step flips the older of the two arcs.
std::vector<CoordState> annulus_walk(const CoordState& start, int first, int second, int steps) {
  std::vector<CoordState> out{start};
  int older = first, newer = second;
  for (int i = 0; i < steps; ++i) {
    const CoordState& cur = out.back();
    if (!cur.tri.is_flippable(older)) throw Error(ErrorKind::ConfigNotFound, "annulus arc became unflippable");
    const int fresh = cur.tri.next_arc_id();
    out.push_back(flip_state(cur, ArcRef::interior(older)));
    older = newer;
    newer = fresh;
  }
  return out;
}

}  // namespace

Ladder build_ladder(const CoordState& t, ArcRef a, ArcRef b, ArcRef e, int half_length) {
  if (half_length < 0) throw Error(ErrorKind::Precondition, "negative half length");
  ThirdSides ts = third_sides(t.tri, a, b);
  if (!ts.second_arrangement) throw Error(ErrorKind::ConfigNotFound, "arcs are not in the annulus arrangement");
  if (!e.is_interior() || e == a || e == b || e == ts.c || e == ts.d || !t.tri.is_flippable(e.id))
    throw Error(ErrorKind::ConfigNotFound, "e must be a flippable arc other than a, b, c, d");
  const CoordState te = flip_state(t, e);
  auto line = [&](const CoordState& s) {
    auto right = annulus_walk(s, a.id, b.id, half_length);
    auto left = annulus_walk(s, b.id, a.id, half_length);
    std::vector<CoordState> all(left.rbegin(), left.rend());
    all.insert(all.end(), right.begin() + 1, right.end());
    return all;
  };
  auto g = line(t), ge = line(te);
  Ladder out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.gamma.push_back(tri_key(g[i]).text);
    out.gamma_e.push_back(tri_key(ge[i]).text);
    if (tri_key(flip_state(g[i], e)).text != out.gamma_e.back())
      throw Error(ErrorKind::Contradiction, "rung " + std::to_string(i) + " is not an e-flip");
    out.rungs.emplace_back(out.gamma.back(), out.gamma_e.back());
  }
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    out.squares.push_back({out.gamma[i], out.gamma[i + 1], out.gamma_e[i + 1], out.gamma_e[i]});
  out.states = std::move(g);
  out.e = e;
  return out;
}

std::optional<LadderSite> find_ladder_site(const SurfaceSig& sig, int radius) {
  Ball bl = ball(sig, radius);
  std::vector<int> order(bl.size());
  for (int i = 0; i < bl.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return bl.vertices[x].dist < bl.vertices[y].dist; });
  for (int v : order) {
    const CoordState& st = *bl.vertices[v].state;
    auto arcs = st.tri.flippable_arcs();
    for (const ArcRef& a : arcs)
      for (const ArcRef& b : arcs) {
        if (!(a < b) || st.tri.common_triangles(a, b) != 2) continue;
        ThirdSides ts = third_sides(st.tri, a, b);
        if (!ts.second_arrangement) continue;
        for (const ArcRef& e : arcs)
          if (!(e == a) && !(e == b) && !(e == ts.c) && !(e == ts.d)) return LadderSite{st, a, b, e};
      }
  }
  return std::nullopt;
}

// ---- counting ----

bool growth_predicate(int n) {
  using boost::multiprecision::cpp_int;
  if (n < 1) throw Error(ErrorKind::Precondition, "n must be positive");
  // 3*2^(n-1) + 10(2n+1) <= 15(2n+1) 2^(5n/6), both sides positive; compare
  // sixth powers.
  cpp_int lhs = 3 * (cpp_int(1) << (n - 1)) + 10 * (2 * n + 1);
  cpp_int rhs = pow(cpp_int(15 * (2 * n + 1)), 6) << (5 * n);
  return pow(lhs, 6) <= rhs;
}

int growth_inequality_max_n(int search_limit) {
  int best = 0;
  for (int n = 1; n <= search_limit; ++n)
    if (growth_predicate(n)) best = n;
  return best;
}

boost::multiprecision::cpp_rational average_distance_bound(int n) {
  if (n < 1) throw Error(ErrorKind::Precondition, "n must be positive");
  return boost::multiprecision::cpp_rational(2 * n, 3);
}

boost::multiprecision::cpp_rational average_distance_sum(int n) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  if (n < 1) throw Error(ErrorKind::Precondition, "n must be positive");
  cpp_int sum = 0;
  for (int k = 1; k <= n; ++k) sum += (cpp_int(1) << k) * (cpp_int(1) << (n - k));
  return cpp_rational(sum, 3 * (cpp_int(1) << (n - 1)));
}

// ---- fibres ----

FiberReport fiber_edges(const Ball& b) {
  FiberReport rep;
  rep.image = oracles::cap_ball(b);
  std::vector<int> deg0(b.size(), 0), deg1(b.size(), 0);
  for (std::size_t i = 0; i < b.edges.size(); ++i) {
    const BallEdge& e = b.edges[i];
    const auto &x = rep.image[e.u], &y = rep.image[e.v];
    if (x == y) {
      rep.type0.push_back(static_cast<int>(i));
      ++deg0[e.u];
      ++deg0[e.v];
    } else {
      rep.type1.push_back(static_cast<int>(i));
      ++deg1[e.u];
      ++deg1[e.v];
      int shared = 0;
      for (const auto& s : x.s) shared += std::count(y.s.begin(), y.s.end(), s);
      if (shared != 2) ++rep.lipschitz_failures;
    }
  }
  for (int v = 0; v < b.size(); ++v)
    if (b.complete(v) && (deg0[v] != 2 || deg1[v] != 2)) ++rep.bad_degree_vertices;

  // Type-0 components must be paths.
  std::vector<int> comp(b.size(), -1);
  std::vector<std::vector<int>> adj0(b.size());
  for (int i : rep.type0) {
    adj0[b.edges[i].u].push_back(b.edges[i].v);
    adj0[b.edges[i].v].push_back(b.edges[i].u);
  }
  for (int s = 0; s < b.size(); ++s) {
    if (comp[s] >= 0) continue;
    int verts = 0, half_edges = 0, max_deg = 0;
    std::deque<int> q{s};
    comp[s] = s;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      ++verts;
      half_edges += static_cast<int>(adj0[v].size());
      max_deg = std::max(max_deg, static_cast<int>(adj0[v].size()));
      for (int w : adj0[v])
        if (comp[w] < 0) {
          comp[w] = s;
          q.push_back(w);
        }
    }
    if (half_edges / 2 != verts - 1 || max_deg > 2) ++rep.non_path_fibers;
  }

  // |fibre ∩ B(v;n)| <= 2n+1 wherever B(v;n) is fully explored.
  for (int v = 0; v < b.size(); ++v) {
    if (!b.complete(v)) continue;
    const int nmax = b.complete_to - b.vertices[v].dist + 1;
    std::vector<int> dist(b.size(), -1);
    dist[v] = 0;
    std::deque<int> q{v};
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      if (dist[x] == nmax) continue;
      for (int y : b.adj[x])
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
    }
    for (int n = 1; n <= nmax; ++n) {
      int count = 0;
      for (int w = 0; w < b.size(); ++w)
        if (dist[w] >= 0 && dist[w] <= n && rep.image[w] == rep.image[v]) ++count;
      if (count > 2 * n + 1) ++rep.fiber_growth_failures;
    }
  }
  return rep;
}

}  // namespace flipgraph

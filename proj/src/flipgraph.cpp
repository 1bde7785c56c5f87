#include "flipgraph/flipgraph.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <nlohmann/json.hpp>
#include <set>
#include <thread>

#include "flipgraph/error.hpp"

namespace flipgraph {

std::int64_t default_budget() {
  if (const char* env = std::getenv("FLIPGRAPH_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    throw Error(ErrorKind::Parse, std::string("FLIPGRAPH_BUDGET is not a positive integer: '") +
                                      env + "'");
  }
  return 5'000'000;
}

std::optional<int> Ball::find(const std::string& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Ball::index_of(const std::string& k) const {
  if (auto v = find(k)) return *v;
  throw Error(ErrorKind::Precondition, "vertex '" + k + "' is not in the ball");
}

bool Ball::adjacent(int u, int v) const {
  return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

void Ball::reindex() {
  index_.clear();
  for (int i = 0; i < size(); ++i) index_.emplace(key(i), i);
  adj.assign(size(), {});
  for (const BallEdge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& n : adj) std::sort(n.begin(), n.end());
}

bool same_graph(const Ball& a, const Ball& b) {
  if (a.surface != b.surface || a.radius != b.radius || a.complete_to != b.complete_to ||
      a.root != b.root || a.size() != b.size() || a.edges != b.edges)
    return false;
  for (int i = 0; i < a.size(); ++i)
    if (a.key(i) != b.key(i) || a.vertices[i].dist != b.vertices[i].dist) return false;
  return true;
}

namespace {

struct Step {
  TriKey key;
  CoordState state;
  std::string removed, added;
};

std::vector<Step> expand(const CoordState& s) {
  std::vector<Step> out;
  for (const ArcRef& a : s.tri.flippable_arcs()) {
    CoordState next = flip_state(s, a);
    std::string removed = coord_text(coord_of(s, a.id));
    std::string added = coord_text(coord_of(next, s.tri.next_arc_id()));
    TriKey k = tri_key(next);
    out.push_back({std::move(k), std::move(next), std::move(removed), std::move(added)});
  }
  return out;
}

std::vector<std::vector<Step>> expand_all(const std::vector<const CoordState*>& frontier,
                                          int threads) {
  std::vector<std::vector<Step>> out(frontier.size());
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(frontier.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < frontier.size(); ++i) out[i] = expand(*frontier[i]);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < frontier.size(); i += workers) out[i] = expand(*frontier[i]);
    });
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

Ball ball_from(const CoordState& root, int r, const BallOptions& opts) {
  if (r < 0) throw Error(ErrorKind::Precondition, "radius must be non-negative");
  if (root.tri.arcs().empty())
    throw Error(ErrorKind::Precondition, "the surface has no arcs, so no flip graph");

  std::vector<BallVertex> verts;
  std::unordered_map<std::uint64_t, std::vector<int>> by_digest;
  auto lookup = [&](const TriKey& k) -> int {
    auto it = by_digest.find(k.digest);
    if (it == by_digest.end()) return -1;
    for (int i : it->second) {
      if (verts[i].key.text == k.text) return i;
    }
    throw Error(ErrorKind::KeyCollision, "digest collision between '" + k.text + "' and '" +
                                             verts[it->second.front()].key.text + "'");
  };
  auto insert = [&](TriKey k, CoordState s, int dist) {
    if (static_cast<std::int64_t>(verts.size()) >= opts.budget)
      throw Error(ErrorKind::ResourceLimit,
                  "vertex budget of " + std::to_string(opts.budget) + " exceeded");
    by_digest[k.digest].push_back(static_cast<int>(verts.size()));
    verts.push_back({std::move(k), dist, std::move(s)});
    return static_cast<int>(verts.size()) - 1;
  };

  insert(tri_key(root), root, 0);
  std::set<std::tuple<int, int, std::string, std::string>> raw_edges;
  std::vector<int> frontier{0};
  bool saturated = false;
  for (int d = 0; d < r; ++d) {
    std::vector<const CoordState*> states;
    for (int i : frontier) states.push_back(&*verts[i].state);
    auto steps = expand_all(states, opts.threads);
    std::vector<int> next;
    for (std::size_t j = 0; j < frontier.size(); ++j) {
      int u = frontier[j];
      for (Step& st : steps[j]) {
        int v = lookup(st.key);
        if (v < 0) {
          v = insert(std::move(st.key), std::move(st.state), d + 1);
          next.push_back(v);
        }
        if (u == v) throw Error(ErrorKind::Contradiction, "flip produced a self-loop");
        if (u < v)
          raw_edges.emplace(u, v, st.removed, st.added);
        else
          raw_edges.emplace(v, u, st.added, st.removed);
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) {
      saturated = true;
      break;
    }
  }

  // Canonical order: sort by key text.
  std::vector<int> order(verts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return verts[a].key.text < verts[b].key.text; });
  std::vector<int> rank(verts.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

  Ball b;
  b.surface = root.tri.signature();
  b.radius = r;
  b.complete_to = saturated ? r : r - 1;
  b.root = rank[0];
  b.vertices.reserve(verts.size());
  for (int i : order) b.vertices.push_back(std::move(verts[i]));
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v, rem, add] : raw_edges) {
    int a = rank[u], c = rank[v];
    if (!seen.emplace(std::min(a, c), std::max(a, c)).second)
      throw Error(ErrorKind::Contradiction, "parallel edges between '" + b.key(a) + "' and '" +
                                                b.key(c) + "'");
    if (a < c)
      b.edges.push_back({a, c, rem, add});
    else
      b.edges.push_back({c, a, add, rem});
  }
  std::sort(b.edges.begin(), b.edges.end(),
            [](const BallEdge& x, const BallEdge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  b.reindex();
  return b;
}

Ball ball(const SurfaceSig& sig, int r, const BallOptions& opts) {
  return ball_from(reference_state(base_triangulation(sig)), r, opts);
}

std::string to_string(Path2Class::Kind k) {
  switch (k) {
    case Path2Class::Kind::FourCycle:
      return "FourCycle";
    case Path2Class::Kind::FiveCycle:
      return "FiveCycle";
    case Path2Class::Kind::NoShortCycle:
      return "NoShortCycle";
  }
  return "?";
}

namespace {

// The arc of `next` that replaced the flipped arc is the one new id.
CoordState flip_checked(const CoordState& s, int arc) {
  if (!s.tri.has_arc(arc))
    throw Error(ErrorKind::NotInterior, "arc " + std::to_string(arc) + " is not in the triangulation");
  if (!s.tri.is_flippable(arc))
    throw Error(ErrorKind::NotFlippable, "arc " + std::to_string(arc) + " is not flippable");
  return flip_state(s, ArcRef::interior(arc));
}

}  // namespace

Path2Class classify_path2(const CoordState& t, ArcRef a, ArcRef b, const Ball* context) {
  if (a == b) throw Error(ErrorKind::SameArc, "classify_path2 needs two distinct arcs");
  const int common = t.tri.common_triangles(a, b);
  CoordState ta = flip_checked(t, a.id);
  CoordState tb = flip_checked(t, b.id);
  Path2Class out;
  if (common == 2) {
    out.kind = Path2Class::Kind::NoShortCycle;
  } else {
    CoordState tab = flip_checked(ta, b.id);
    CoordState tba = flip_checked(tb, a.id);
    const std::string kab = tri_key(tab).text, kba = tri_key(tba).text;
    if (common == 0) {
      if (kab != kba)
        throw Error(ErrorKind::Contradiction, "disjoint flips do not commute at '" + tri_key(t).text + "'");
      out.kind = Path2Class::Kind::FourCycle;
      out.cycle = {tri_key(t).text, tri_key(ta).text, kab, tri_key(tb).text};
    } else {
      out.kind = Path2Class::Kind::FiveCycle;
      out.cycle = {tri_key(t).text, tri_key(ta).text, kab, kba, tri_key(tb).text};
      // T_ab and T_ba differ by one flip.
      bool linked = false;
      for (const ArcRef& c : tab.tri.flippable_arcs())
        if (tri_key(flip_state(tab, c)).text == kba) linked = true;
      if (!linked)
        throw Error(ErrorKind::Contradiction, "pentagon does not close at '" + tri_key(t).text + "'");
    }
  }
  if (context) {
    const auto& cyc = out.cycle;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      auto u = context->find(cyc[i]);
      auto v = context->find(cyc[(i + 1) % cyc.size()]);
      if (!u || !v || !context->adjacent(*u, *v))
        throw Error(ErrorKind::InsufficientRadius, "cycle leaves the explored ball");
    }
  }
  return out;
}

std::vector<std::vector<int>> cycles_through(const std::array<int, 3>& path, int maxlen,
                                             const Ball& ctx) {
  const int p0 = path[0], p1 = path[1], p2 = path[2];
  if (p0 == p2 || !ctx.adjacent(p0, p1) || !ctx.adjacent(p1, p2))
    throw Error(ErrorKind::Precondition, "not a length-2 path in the ball");
  std::vector<std::vector<int>> out;
  if (maxlen < 3) return out;
  auto has_edge = [&](int x, int y) {
    if (!ctx.complete(x) && !ctx.complete(y))
      throw Error(ErrorKind::InsufficientRadius,
                  "cycle search reaches unexplored vertex '" + ctx.key(x) + "'");
    return ctx.adjacent(x, y);
  };
  std::vector<int> cur{p1, p2};
  std::vector<char> used(ctx.size(), 0);
  used[p1] = used[p2] = 1;
  // cur holds p1, p2, ...; closing edge back to p0 completes a cycle.
  std::function<void()> dfs = [&] {
    const int x = cur.back();
    const int len = static_cast<int>(cur.size()) + 1;  // with p0 appended
    if (x != p0 && has_edge(x, p0) && len >= 3) {
      auto c = cur;
      c.push_back(p0);
      out.push_back(std::move(c));
    }
    if (len + 1 > maxlen) return;
    if (!ctx.complete(x))
      throw Error(ErrorKind::InsufficientRadius,
                  "cycle search reaches unexplored vertex '" + ctx.key(x) + "'");
    for (int y : ctx.adj[x]) {
      if (used[y] || y == p0) continue;
      used[y] = 1;
      cur.push_back(y);
      dfs();
      cur.pop_back();
      used[y] = 0;
    }
  };
  dfs();
  return out;
}

ShortCycleReport verify_short_cycles(const Ball& b) {
  ShortCycleReport rep;
  for (int v = 0; v < b.size(); ++v) {
    if (b.vertices[v].dist > b.complete_to - 2) continue;
    const CoordState& st = *b.vertices[v].state;
    auto arcs = st.tri.flippable_arcs();
    std::map<int, int> nb;
    for (const ArcRef& a : arcs) nb[a.id] = b.index_of(tri_key(flip_state(st, a)).text);
    for (std::size_t i = 0; i < arcs.size(); ++i)
      for (std::size_t j = i + 1; j < arcs.size(); ++j) {
        ++rep.paths;
        const ArcRef a = arcs[i], c = arcs[j];
        auto fail = [&](const std::string& why) { rep.violations.push_back({b.key(v), a.id, c.id, why}); };
        const int common = st.tri.common_triangles(a, c);
        Path2Class pc;
        try {
          pc = classify_path2(st, a, c, &b);
        } catch (const Error& e) {
          fail(e.what());
          continue;
        }
        ++rep.by_kind[to_string(pc.kind)];
        const Path2Class::Kind want = common == 0   ? Path2Class::Kind::FourCycle
                                      : common == 1 ? Path2Class::Kind::FiveCycle
                                                    : Path2Class::Kind::NoShortCycle;
        if (pc.kind != want) fail("classified " + to_string(pc.kind) + " with " + std::to_string(common) + " common triangles");
        if (nb[a.id] == nb[c.id]) {
          fail("parallel edges");
          continue;
        }
        auto cycles = cycles_through({nb[a.id], v, nb[c.id]}, 5, b);
        std::size_t want_len = common == 0 ? 4 : common == 1 ? 5 : 0;
        if (want_len == 0) {
          if (!cycles.empty()) fail("short cycle through a path with two common triangles");
          continue;
        }
        if (cycles.size() != 1 || cycles[0].size() != want_len) {
          fail(std::to_string(cycles.size()) + " short cycles through the path");
          continue;
        }
        std::vector<std::string> found, expected = pc.cycle;
        for (int x : cycles[0]) found.push_back(b.key(x));
        std::sort(found.begin(), found.end());
        std::sort(expected.begin(), expected.end());
        if (found != expected) fail("search found a different cycle than the flips");
        for (auto& cy : cycles)
          if (cy.size() == 3) fail("3-cycle");
      }
  }
  return rep;
}

std::string export_json(const Ball& b) {
  nlohmann::ordered_json j;
  j["surface"] = b.surface.str();
  j["root"] = b.root_key();
  j["radius"] = b.radius;
  j["complete_to"] = b.complete_to;
  auto& vs = j["vertices"] = nlohmann::ordered_json::array();
  for (int i = 0; i < b.size(); ++i) {
    nlohmann::ordered_json v;
    v["key"] = b.key(i);
    v["dist"] = b.vertices[i].dist;
    if (b.complete(i))
      v["degree"] = b.adj[i].size();
    else
      v["degree"] = nullptr;
    vs.push_back(std::move(v));
  }
  auto& es = j["edges"] = nlohmann::ordered_json::array();
  for (const BallEdge& e : b.edges)
    es.push_back({{"u", b.key(e.u)}, {"v", b.key(e.v)}, {"removed", e.removed}, {"added", e.added}});
  return j.dump(1) + "\n";
}

std::string export_dot(const Ball& b) {
  auto name = [&](int v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(b.vertices[v].key.digest));
    return std::string(buf);
  };
  std::string out = "graph flips {\n";
  for (int i = 0; i < b.size(); ++i)
    out += "  \"" + name(i) + "\" [label=\"" + std::to_string(b.vertices[i].dist) + "\"];\n";
  for (const BallEdge& e : b.edges) out += "  \"" + name(e.u) + "\" -- \"" + name(e.v) + "\";\n";
  out += "}\n";
  return out;
}

Ball import_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    Ball b;
    b.surface = SurfaceSig::parse(j.at("surface").get<std::string>());
    b.radius = j.at("radius").get<int>();
    b.complete_to = j.at("complete_to").get<int>();
    for (const auto& v : j.at("vertices"))
      b.vertices.push_back({tri_key_from_text(v.at("key").get<std::string>()), v.at("dist").get<int>(), std::nullopt});
    std::sort(b.vertices.begin(), b.vertices.end(),
              [](const BallVertex& x, const BallVertex& y) { return x.key.text < y.key.text; });
    b.reindex();
    b.root = b.index_of(j.at("root").get<std::string>());
    for (const auto& e : j.at("edges")) {
      int u = b.index_of(e.at("u").get<std::string>());
      int v = b.index_of(e.at("v").get<std::string>());
      std::string rem = e.at("removed").get<std::string>(), add = e.at("added").get<std::string>();
      if (u > v) {
        std::swap(u, v);
        std::swap(rem, add);
      }
      b.edges.push_back({u, v, rem, add});
    }
    std::sort(b.edges.begin(), b.edges.end(),
              [](const BallEdge& x, const BallEdge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
    b.reindex();
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bad ball JSON: ") + e.what());
  }
}

std::map<int, int> degree_profile(const Ball& b) {
  std::map<int, int> out;
  for (int i = 0; i < b.size(); ++i)
    if (b.complete(i)) ++out[static_cast<int>(b.adj[i].size())];
  return out;
}

}  // namespace flipgraph

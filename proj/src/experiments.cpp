#include "flipgraph/experiments.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "flipgraph/error.hpp"

namespace flipgraph {

CoordState closure_root(const SurfaceSig& sig) {
  Ball small = ball(sig, 4);
  for (int v = 0; v < small.size(); ++v) {
    if (!small.complete(v)) continue;
    const CoordState& st = *small.vertices[v].state;
    auto arcs = st.tri.flippable_arcs();
    if (arcs.size() < 2) continue;
    bool all_one = true;
    for (std::size_t i = 0; i < arcs.size() && all_one; ++i)
      for (std::size_t j = i + 1; j < arcs.size(); ++j)
        if (st.tri.common_triangles(arcs[i], arcs[j]) != 1) all_one = false;
    if (all_one) return st;
  }
  return *small.vertices[small.root].state;
}

ClosureRun run_star_closure(const CoordState& root, int domain_r, int host_r,
                            const ClosureOptions& opts) {
  ClosureRun run;
  run.domain = std::make_unique<Ball>(ball_from(root, domain_r));
  run.host = std::make_unique<Ball>(ball_from(root, host_r));
  const Ball& dom = *run.domain;
  std::vector<int> star{dom.root};
  for (int w : dom.adj[dom.root]) star.push_back(w);
  run.map = rigid_closure(identity_seed(dom, *run.host, star), opts);

  std::vector<bool> missing(dom.radius + 1, false);
  for (int v = 0; v < dom.size(); ++v)
    if (!run.map.assignment.count(v)) missing[dom.vertices[v].dist] = true;
  while (run.forced_radius < dom.radius && !missing[run.forced_radius + 1]) ++run.forced_radius;

  std::map<std::string, std::string> identity;
  for (const BallVertex& v : dom.vertices) identity[v.key.text] = v.key.text;
  run.replay_ok = replay_agrees(run.map, identity);
  return run;
}

BSetForcingReport run_bset_forcing(const SurfaceSig& sig, int domain_r, int host_r) {
  BSetForcingReport rep;
  const Ball dom = ball(sig, domain_r);
  const Ball host = ball(sig, host_r);
  for (int v = 0; v < dom.size(); ++v) {
    const CoordState& st = *dom.vertices[v].state;
    auto arcs = st.tri.flippable_arcs();
    for (const ArcRef& a : arcs)
      for (const ArcRef& b : arcs) {
        if (a == b || st.tri.common_triangles(a, b) != 2) continue;
        const std::string where = dom.key(v) + " a=" + std::to_string(a.id) + " b=" + std::to_string(b.id);
        BSet bs;
        try {
          bs = build_bset(st, a, b, &dom);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::InsufficientRadius) {
            ++rep.outside;
            continue;
          }
          ++rep.sites;
          rep.failures.push_back(where + ": " + e.what());
          continue;
        }
        ++rep.sites;
        std::vector<int> keep;
        for (const std::string& k : bs.keys()) keep.push_back(dom.index_of(k));
        const Ball sub = induced_subgraph(dom, keep);
        std::vector<int> seeds;
        for (const char* role : {"T", "T_b", "T_c", "T_e", "T_bc", "T_cb", "T_eb"})
          seeds.push_back(sub.index_of(bs.roles.at(role)));
        ClosureOptions opts;
        opts.r2_site = sub.index_of(bs.roles.at("T"));
        try {
          PartialMap pm = rigid_closure(identity_seed(sub, host, seeds), opts);
          const std::string& ta = bs.roles.at("T_a");
          bool hit = std::any_of(pm.trace.begin(), pm.trace.end(), [&](const ForcedStep& s) {
            return s.rule == "R2" && s.forced == ta && s.image == ta;
          });
          if (hit)
            ++rep.forced;
          else
            rep.failures.push_back(where + ": T_a not forced by R2");
        } catch (const Error& e) {
          rep.failures.push_back(where + ": " + e.what());
        }
      }
  }
  return rep;
}

namespace {

// Vertices of a path-shaped ball, walked from one end.
std::vector<int> walk_line(const Ball& line) {
  int start = -1;
  for (int v = 0; v < line.size(); ++v)
    if (line.adj[v].size() == 1) {
      start = v;
      break;
    }
  if (start < 0) throw Error(ErrorKind::Precondition, "ball is not a path");
  std::vector<int> order{start};
  int prev = -1, cur = start;
  while (true) {
    int next = -1;
    for (int w : line.adj[cur])
      if (w != prev) next = w;
    if (next < 0) break;
    prev = cur;
    cur = next;
    order.push_back(cur);
  }
  return order;
}

SimpleGraph line_segment(int length) {
  const Ball line = ball(SurfaceSig(0, 0, {1, 1}), (length + 1) / 2);
  std::vector<int> order = walk_line(line);
  if (static_cast<int>(order.size()) < length) throw Error(ErrorKind::Precondition, "line ball too short");
  order.resize(length);
  std::map<int, int> pos;
  for (int i = 0; i < length; ++i) pos[order[i]] = i;
  SimpleGraph g;
  g.adj.resize(length);
  for (int i = 0; i < length; ++i)
    for (int w : line.adj[order[i]])
      if (pos.count(w)) g.adj[i].push_back(pos[w]);
  return g;
}

}  // namespace

SegmentExtension run_segment_extension(int host_r, int length, int extra) {
  const Ball host = ball(SurfaceSig(1, 1), host_r);
  SegmentExtension out;
  auto first = search_injective_homs(line_segment(length), host, {{0, host.root}}, 1);
  if (first.empty()) return out;
  for (int h : first[0]) out.segment.push_back(host.key(h));
  std::map<int, int> seed;
  for (int i = 0; i < length; ++i) seed[i] = first[0][i];
  for (const auto& hom : search_injective_homs(line_segment(length + extra), host, seed, 1 << 20)) {
    std::vector<std::string> keys;
    for (int h : hom) keys.push_back(host.key(h));
    out.extensions.push_back(std::move(keys));
  }
  return out;
}

FuzzReport fuzz_flips(const SurfaceSig& sig, int sequences, int length, std::uint64_t seed) {
  FuzzReport rep;
  const CoordState base = reference_state(base_triangulation(sig));
  const int arcs = arc_count(sig);
  std::mt19937_64 rng(seed);
  for (int s = 0; s < sequences; ++s) {
    CoordState cur = base;
    for (int step = 0; step < length; ++step) {
      auto flippable = cur.tri.flippable_arcs();
      if (flippable.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, flippable.size() - 1);
      const ArcRef a = flippable[pick(rng)];
      ++rep.flips;

      if (auto lit = ptolemy_consistent(cur, a)) {
        ++rep.ptolemy_checked;
        if (!*lit) {
          ++rep.ptolemy_failures;
          for (int r : ptolemy_defects(cur, a)) {
            if (!ends_in_quad(cur, a, r)) ++rep.ptolemy_unexplained;
            if (rep.first_ptolemy_witness.empty())
              rep.first_ptolemy_witness = tri_key(cur).text + " flip " + std::to_string(a.id) +
                                          " component " + std::to_string(r);
          }
        }
      }

      CoordState next = flip_state(cur, a);
      const int added = cur.tri.next_arc_id();
      const TriKey before = tri_key(cur), after = tri_key(next);
      if (!next.tri.has_arc(added) || tri_key(flip_state(next, ArcRef::interior(added))) != before ||
          before == after)
        ++rep.involution_failures;
      if (static_cast<int>(next.tri.arcs().size()) != arcs) ++rep.arc_count_failures;
      if (next.tri.signature() != sig) ++rep.signature_failures;
      const TriKey back = tri_key_from_text(after.text);
      if (back.text != after.text || back.digest != after.digest || back.coords != after.coords)
        ++rep.key_failures;
      cur = std::move(next);
    }
  }
  return rep;
}

std::string ladder_json(const Ladder& l, const SurfaceSig& sig) {
  std::map<std::string, std::string> roles;
  for (std::size_t i = 0; i < l.gamma.size(); ++i) roles[l.gamma[i]] = "gamma[" + std::to_string(i) + "]";
  for (std::size_t i = 0; i < l.gamma_e.size(); ++i) roles[l.gamma_e[i]] = "gamma_e[" + std::to_string(i) + "]";

  std::set<std::pair<std::string, std::string>> pairs;
  auto link = [&](const std::string& x, const std::string& y) {
    if (x != y) pairs.insert(std::minmax(x, y));
  };
  for (std::size_t i = 0; i + 1 < l.gamma.size(); ++i) link(l.gamma[i], l.gamma[i + 1]);
  for (std::size_t i = 0; i + 1 < l.gamma_e.size(); ++i) link(l.gamma_e[i], l.gamma_e[i + 1]);
  for (const auto& [x, y] : l.rungs) link(x, y);

  Ball b;
  b.surface = sig;
  for (const auto& [k, role] : roles) b.vertices.push_back({tri_key_from_text(k), 0, std::nullopt});
  b.reindex();
  for (const auto& [x, y] : pairs) {
    BallEdge e{b.index_of(x), b.index_of(y), "", ""};
    auto cx = tri_key_from_text(x).coords, cy = tri_key_from_text(y).coords;
    for (const auto& c : cx)
      if (!std::binary_search(cy.begin(), cy.end(), c)) e.removed = coord_text(c);
    for (const auto& c : cy)
      if (!std::binary_search(cx.begin(), cx.end(), c)) e.added = coord_text(c);
    b.edges.push_back(std::move(e));
  }
  b.reindex();
  b.root = b.index_of(l.gamma[l.gamma.size() / 2]);
  for (auto& v : b.vertices) v.dist = -1;
  std::deque<int> q{b.root};
  b.vertices[b.root].dist = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int w : b.adj[u])
      if (b.vertices[w].dist < 0) {
        b.vertices[w].dist = b.vertices[u].dist + 1;
        b.radius = b.complete_to = std::max(b.radius, b.vertices[w].dist);
        q.push_back(w);
      }
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(export_json(b));
  j["roles"] = roles;
  return j.dump(1) + "\n";
}

}  // namespace flipgraph

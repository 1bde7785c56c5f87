// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "flipgraph/error.hpp"
#include "flipgraph/experiments.hpp"

using namespace flipgraph;
using boost::multiprecision::cpp_rational;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  char t[32];
  std::snprintf(t, sizeof t, "%.1fs", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << o.detail << " [" << t << "]"
            << std::endl;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Regression constant: distance between the domain radius and the largest
// radius forced by R1 from the closed star.
constexpr int kClosureCollar = 2;

}  // namespace

int main() {
  criterion(1, [] {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream s;
    for (int n = 0; n <= 10; ++n) {
      const Ball b = ball(SurfaceSig(1, 1), n);
      const bool size_ok = b.size() == 3 * (1 << n) - 2;
      const bool iso = oracles::rooted_tree_isomorphic(oracles::rooted_graph_of(b), oracles::farey_ball(n));
      ok = ok && size_ok && iso;
      if (!size_ok || !iso) s << " n=" << n << " size=" << b.size() << " iso=" << iso;
    }
    const double secs = elapsed(t0);
    s << "S1,1 balls n=0..10 have 3*2^n-2 vertices and match the Farey tree" << (ok ? "" : " (mismatch)");
    return Outcome{ok && secs < 30, s.str()};
  });

  criterion(2, [] {
    const Ball b = ball(SurfaceSig(0, 0, {1, 1}), 30);
    int ends = 0, middle = 0;
    for (int v = 0; v < b.size(); ++v) (b.adj[v].size() == 1 ? ends : middle) += b.adj[v].size() == 1 || b.adj[v].size() == 2;
    bool path = b.size() == 61 && static_cast<int>(b.edges.size()) == 60 && ends == 2 && middle == 59;
    bool iso = oracles::rooted_tree_isomorphic(oracles::rooted_graph_of(b), oracles::annulus_model_ball(30));
    std::ostringstream s;
    s << "S0,0,(1,1) radius 30: " << b.size() << " vertices, " << b.edges.size() << " edges, path=" << path
      << ", annulus model match=" << iso;
    return Outcome{path && iso, s.str()};
  });

  criterion(3, [] {
    const auto t0 = std::chrono::steady_clock::now();
    long long paths = 0, bad = 0;
    std::map<std::string, long long> kinds;
    std::string witness;
    for (const char* text : {"S0,4", "S1,0,(1)", "S0,0,(1,2)", "S0,2,(1)", "S0,2,(2)", "S0,0,(2,2)"}) {
      BallOptions opts;
      opts.threads = 4;
      const ShortCycleReport rep = verify_short_cycles(ball(SurfaceSig::parse(text), 7, opts));
      paths += rep.paths;
      bad += static_cast<long long>(rep.violations.size());
      for (const auto& [k, n] : rep.by_kind) kinds[k] += n;
      if (!rep.violations.empty() && witness.empty())
        witness = std::string(" witness ") + text + " " + rep.violations[0].key + ": " + rep.violations[0].reason;
    }
    const double secs = elapsed(t0);
    std::ostringstream s;
    s << "radius-7 balls of six surfaces: " << paths << " explored length-2 paths (";
    for (const auto& [k, n] : kinds) s << k << "=" << n << " ";
    s << "), violations=" << bad << witness;
    return Outcome{bad == 0 && paths > 0 && secs < 300, s.str()};
  });

  criterion(4, [] {
    auto sample_classes = [](const SurfaceSig& sig) {
      // Grow the ball until the set of classes stops changing for two radii.
      std::set<std::string> classes;
      std::size_t last = 0;
      int stable = 0;
      for (int r = 1; stable < 2; ++r) {
        for (const BallVertex& v : ball(sig, r).vertices) classes.insert(v.state->tri.canonical_class());
        stable = classes.size() == last ? stable + 1 : 0;
        last = classes.size();
      }
      return classes.size();
    };
    const std::size_t torus = sample_classes(SurfaceSig(1, 0, {1}));
    const std::size_t sphere = sample_classes(SurfaceSig(0, 4));
    const std::size_t torus_enum = oracles::enumerate_all(SurfaceSig(1, 0, {1})).size();
    const std::size_t sphere_enum = oracles::enumerate_all(SurfaceSig(0, 4)).size();
    std::ostringstream s;
    s << "classes S1,0,(1): sampled=" << torus << " enumerated=" << torus_enum << "; S0,4: sampled=" << sphere
      << " enumerated=" << sphere_enum;
    return Outcome{torus == 1 && torus_enum == 1 && sphere == 6 && sphere_enum == 6, s.str()};
  });

  criterion(5, [] {
    const int max_n = growth_inequality_max_n();
    const bool p62 = growth_predicate(62);
    int avg_bad = 0;
    for (int n = 1; n <= 64; ++n)
      if (average_distance_bound(n) != cpp_rational(2 * n, 3) || average_distance_sum(n) != average_distance_bound(n))
        ++avg_bad;
    std::ostringstream s;
    s << "growth max n=" << max_n << ", predicate(62)=" << p62 << ", average-distance mismatches n<=64: " << avg_bad;
    return Outcome{max_n == 61 && !p62 && avg_bad == 0, s.str()};
  });

  criterion(6, [] {
    BallOptions opts;
    opts.threads = 4;
    const Ball b = ball(SurfaceSig(1, 0, {1}), 8, opts);
    const FiberReport rep = fiber_edges(b);
    std::ostringstream s;
    s << "S1,0,(1) radius 8: " << b.size() << " vertices, type0=" << rep.type0.size() << " type1=" << rep.type1.size()
      << " bad_degree=" << rep.bad_degree_vertices << " non_path=" << rep.non_path_fibers
      << " lipschitz=" << rep.lipschitz_failures << " fiber_growth=" << rep.fiber_growth_failures;
    return Outcome{rep.ok() && !rep.type0.empty(), s.str()};
  });

  criterion(7, [] {
    const SurfaceSig sig(0, 0, {1, 2});
    const CoordState root = closure_root(sig);
    ClosureOptions opts;
    opts.use_r2 = false;
    const ClosureRun run = run_star_closure(root, 10, 13, opts);
    bool r1_only = true;
    for (const ForcedStep& st : run.map.trace) r1_only = r1_only && st.rule.rfind("R1", 0) == 0;
    const int collar = run.domain->radius - run.forced_radius;
    std::ostringstream s;
    s << "S0,0,(1,2) radius 10 from a degree-" << run.domain->adj[run.domain->root].size() << " root: assigned "
      << run.map.assignment.size() << "/" << run.domain->size() << ", forced through distance " << run.forced_radius
      << " (collar " << collar << ", frozen " << kClosureCollar << "), trace=" << run.map.trace.size()
      << " steps, replay=" << run.replay_ok;
    return Outcome{run.forced_radius >= 8 && collar == kClosureCollar && run.replay_ok && r1_only, s.str()};
  });

  criterion(8, [] {
    bool ok = true;
    std::ostringstream s;
    for (const char* text : {"S0,5", "S1,2"}) {
      const BSetForcingReport rep = run_bset_forcing(SurfaceSig::parse(text), 5, 8);
      ok = ok && rep.sites > 0 && rep.forced == rep.sites && rep.failures.empty();
      s << text << ": sites=" << rep.sites << " forced=" << rep.forced << " ties/failures=" << rep.failures.size()
        << " (skipped " << rep.outside << " leaving the ball)";
      if (!rep.failures.empty()) s << " first: " << rep.failures[0];
      s << "; ";
    }
    return Outcome{ok, s.str()};
  });

  criterion(9, [] {
    bool ok = true;
    std::ostringstream s;
    for (const char* text : {"S0,5", "S1,2"}) {
      const SurfaceSig sig = SurfaceSig::parse(text);
      const DoubleTriangleReport rep = check_double_triangle_pairs(sig, bfs_sample(sig, 500));
      ok = ok && rep.triangulations >= 500 && rep.violations.empty();
      s << text << ": " << rep.triangulations << " triangulations, " << rep.pairs << " pairs, violations="
        << rep.violations.size() << "; ";
    }
    return Outcome{ok, s.str()};
  });

  criterion(10, [] {
    const SegmentExtension ext = run_segment_extension(10, 6, 2);
    auto site = find_ladder_site(SurfaceSig(1, 2), 3);
    if (!site) return Outcome{false, "no annulus arrangement found in S1,2 radius 3"};
    const Ladder l = build_ladder(site->t, site->a, site->b, site->e, 3);
    int squares = 0, four = 0;
    for (std::size_t i = 0; i + 1 < l.states.size(); ++i)
      for (const ArcRef& x : l.states[i].tri.flippable_arcs())
        if (tri_key(flip_state(l.states[i], x)).text == l.gamma[i + 1]) {
          ++squares;
          four += classify_path2(l.states[i], x, l.e).kind == Path2Class::Kind::FourCycle;
        }
    std::ostringstream s;
    s << "segment extensions=" << ext.extensions.size() << "; ladder " << l.vertex_count() << " vertices, "
      << four << "/" << squares << " squares are 4-cycles";
    return Outcome{ext.extensions.size() >= 2 && squares == static_cast<int>(l.squares.size()) && four == squares &&
                       squares > 0,
                   s.str()};
  });

  criterion(11, [] {
    const char* surfaces[] = {"S0,1",     "S0,3",     "S0,4",       "S1,1",       "S1,0,(1)",   "S0,0,(4)",
                              "S0,0,(5)", "S0,0,(6)", "S0,0,(8)",   "S0,1,(1)",   "S0,1,(2)",   "S0,1,(3)",
                              "S0,1,(5)", "S0,2,(1)", "S0,2,(2)",   "S0,0,(1,1)", "S0,0,(1,2)", "S0,0,(2,2)",
                              "S0,5",     "S1,2"};
    FuzzReport total;
    std::uint64_t seed = 1;
    for (const char* text : surfaces) {
      const FuzzReport r = fuzz_flips(SurfaceSig::parse(text), 10000, 8, seed++);
      total.flips += r.flips;
      total.involution_failures += r.involution_failures;
      total.arc_count_failures += r.arc_count_failures;
      total.signature_failures += r.signature_failures;
      total.key_failures += r.key_failures;
      total.ptolemy_checked += r.ptolemy_checked;
      total.ptolemy_failures += r.ptolemy_failures;
      total.ptolemy_unexplained += r.ptolemy_unexplained;
      if (total.first_ptolemy_witness.empty() && !r.first_ptolemy_witness.empty())
        total.first_ptolemy_witness = std::string(text) + " " + r.first_ptolemy_witness;
    }
    std::ostringstream s;
    s << total.flips << " flips over " << std::size(surfaces) << " surfaces: involution=" << total.involution_failures
      << " arc_count=" << total.arc_count_failures << " signature=" << total.signature_failures
      << " key=" << total.key_failures << " ptolemy=" << total.ptolemy_failures << "/" << total.ptolemy_checked;
    if (total.ptolemy_failures > 0)
      s << " (failing components not ending in the quad: " << total.ptolemy_unexplained
        << "; first witness " << total.first_ptolemy_witness << ")";
    const bool ok = total.involution_failures == 0 && total.arc_count_failures == 0 &&
                    total.signature_failures == 0 && total.key_failures == 0 && total.ptolemy_failures == 0;
    return Outcome{ok, s.str()};
  });

  return failures == 0 ? 0 : 1;
}

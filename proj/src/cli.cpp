#include "flipgraph/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "flipgraph/error.hpp"
#include "flipgraph/experiments.hpp"

namespace flipgraph {

namespace {

struct RunConfig {
  std::string surface;
  int radius = -1;
  std::int64_t budget = default_budget();
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out;

  BallOptions ball_options() const { return {budget, threads}; }
  SurfaceSig sig() const { return SurfaceSig::parse(surface); }
};

// Thrown by handlers for degenerate input that CLI11 cannot see.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by verifiers after printing a witness.
struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ResourceLimit:
    case ErrorKind::InsufficientRadius:
      return kExitResource;
    case ErrorKind::Contradiction:
    case ErrorKind::KeyCollision:
      return kExitVerification;
    default:
      return kExitInput;
  }
}

void add_common(CLI::App* sub, RunConfig& cfg, bool surface, bool surface_required, int radius_default) {
  if (surface) {
    auto* opt = sub->add_option("--surface", cfg.surface, "surface signature, e.g. S1,1 or S0,0,(1,2)");
    if (surface_required) opt->required();
  }
  if (radius_default >= 0) {
    cfg.radius = radius_default;
    sub->add_option("--radius", cfg.radius, "ball radius")->check(CLI::NonNegativeNumber)->capture_default_str();
  }
  sub->add_option("--budget", cfg.budget, "vertex budget (env FLIPGRAPH_BUDGET)")->check(CLI::PositiveNumber);
  sub->add_option("--format", cfg.format, "json or dot")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();
  sub->add_option("--seed", cfg.seed, "seed for sampled checks");
  sub->add_option("--threads", cfg.threads, "worker cap")->check(CLI::PositiveNumber);
  sub->add_option("--out", cfg.out, "output file (default stdout)");
}

std::string ball_text(const Ball& b, const std::string& format) {
  return format == "dot" ? export_dot(b) : export_json(b);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flip graphs of triangulated surfaces"};
  app.require_subcommand(1);
  app.footer("exit codes: 0 ok, 1 input error, 2 resource limit, 3 verification failure");

  // One config per subcommand so that defaults do not leak between them.
  std::deque<RunConfig> configs;
  RunConfig* active = nullptr;
  std::function<std::string()> handler;
  auto on = [&](CLI::App* sub, RunConfig& c, std::function<std::string()> h) {
    sub->callback([&handler, &active, &c, h] {
      handler = h;
      active = &c;
    });
  };

  auto* c_ball = app.add_subcommand("ball", "export the ball of given radius around the base triangulation");
  RunConfig& cfg_c_ball = configs.emplace_back();
  add_common(c_ball, cfg_c_ball, true, true, 3);
  on(c_ball, cfg_c_ball, [&] { return ball_text(ball(cfg_c_ball.sig(), cfg_c_ball.radius, cfg_c_ball.ball_options()), cfg_c_ball.format); });

  auto* c_classes = app.add_subcommand("classes", "count homeomorphism classes of triangulations");
  RunConfig& cfg_c_classes = configs.emplace_back();
  add_common(c_classes, cfg_c_classes, true, true, -1);
  on(c_classes, cfg_c_classes, [&] {
    return std::to_string(oracles::enumerate_all(cfg_c_classes.sig(), cfg_c_classes.budget).size()) + "\n";
  });

  auto* c_l32 = app.add_subcommand("verify-lemma32", "check the short-cycle classification of length-2 paths");
  RunConfig& cfg_c_l32 = configs.emplace_back();
  add_common(c_l32, cfg_c_l32, true, true, 5);
  on(c_l32, cfg_c_l32, [&] {
    Ball b = ball(cfg_c_l32.sig(), cfg_c_l32.radius, cfg_c_l32.ball_options());
    ShortCycleReport rep = verify_short_cycles(b);
    std::ostringstream s;
    s << "paths=" << rep.paths;
    for (const auto& [kind, n] : rep.by_kind) s << ' ' << kind << '=' << n;
    s << " violations=" << rep.violations.size() << "\n";
    for (const auto& v : rep.violations)
      s << "witness " << v.key << " a=" << v.a << " b=" << v.b << ": " << v.reason << "\n";
    if (!rep.violations.empty()) throw VerificationFailed(s.str());
    return s.str();
  });

  int sample_count = 500;
  auto* c_l51 = app.add_subcommand("verify-lemma51", "check the two-common-triangle configuration on a sample");
  RunConfig& cfg_c_l51 = configs.emplace_back();
  add_common(c_l51, cfg_c_l51, true, true, -1);
  c_l51->add_option("--count", sample_count, "sample size")->check(CLI::PositiveNumber)->capture_default_str();
  on(c_l51, cfg_c_l51, [&] {
    const SurfaceSig sig = cfg_c_l51.sig();
    std::vector<CoordState> sample;
    if (cfg_c_l51.seed) {
      sample = bfs_sample(sig, 4 * sample_count);
      std::shuffle(sample.begin(), sample.end(), std::mt19937_64(*cfg_c_l51.seed));
      if (static_cast<int>(sample.size()) > sample_count) sample.resize(sample_count);
    } else {
      sample = bfs_sample(sig, sample_count);
    }
    DoubleTriangleReport rep = check_double_triangle_pairs(sig, sample);
    std::ostringstream s;
    s << "triangulations=" << rep.triangulations << " pairs=" << rep.pairs
      << " violations=" << rep.violations.size() << "\n";
    for (const auto& v : rep.violations)
      s << "witness " << v.key << " a=" << v.a << " b=" << v.b << ": " << v.reason << "\n";
    if (!rep.violations.empty()) throw VerificationFailed(s.str());
    return s.str();
  });

  int host_extra = 3;
  bool r1_only = false;
  auto* c_closure = app.add_subcommand("closure", "propagate the identity from the closed star of a root");
  RunConfig& cfg_c_closure = configs.emplace_back();
  add_common(c_closure, cfg_c_closure, true, true, 6);
  c_closure->add_option("--host-extra", host_extra, "host radius minus domain radius")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  c_closure->add_flag("--r1-only", r1_only, "disable rule R2");
  on(c_closure, cfg_c_closure, [&] {
    ClosureOptions opts;
    opts.use_r2 = !r1_only;
    ClosureRun run = run_star_closure(closure_root(cfg_c_closure.sig()), cfg_c_closure.radius, cfg_c_closure.radius + host_extra, opts);
    if (!run.replay_ok) throw VerificationFailed(trace_json(run.map));
    err << "assigned=" << run.map.assignment.size() << "/" << run.domain->size()
        << " forced_radius=" << run.forced_radius << "\n";
    return trace_json(run.map);
  });

  int seg_length = 6, seg_extra = 2;
  auto* c_hom = app.add_subcommand("homsearch", "extend an embedded annulus segment into the torus flip graph");
  RunConfig& cfg_c_hom = configs.emplace_back();
  add_common(c_hom, cfg_c_hom, false, false, 10);
  c_hom->add_option("--length", seg_length, "segment vertices")->check(CLI::PositiveNumber)->capture_default_str();
  c_hom->add_option("--extra", seg_extra, "extension length")->check(CLI::NonNegativeNumber)->capture_default_str();
  on(c_hom, cfg_c_hom, [&] {
    SegmentExtension r = run_segment_extension(cfg_c_hom.radius, seg_length, seg_extra);
    nlohmann::ordered_json j;
    j["segment"] = r.segment;
    j["extensions"] = r.extensions;
    return j.dump(1) + "\n";
  });

  int half_length = 3;
  auto* c_ladder = app.add_subcommand("ladder", "build a ladder of squares from an annulus arrangement");
  RunConfig& cfg_c_ladder = configs.emplace_back();
  add_common(c_ladder, cfg_c_ladder, true, false, 3);
  c_ladder->add_option("--half-length", half_length, "steps on each side")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  on(c_ladder, cfg_c_ladder, [&] {
    if (cfg_c_ladder.surface.empty()) cfg_c_ladder.surface = "S1,2";
    const SurfaceSig sig = cfg_c_ladder.sig();
    auto site = find_ladder_site(sig, cfg_c_ladder.radius);
    if (!site) throw Error(ErrorKind::ConfigNotFound, "no annulus arrangement within radius " + std::to_string(cfg_c_ladder.radius));
    Ladder l = build_ladder(site->t, site->a, site->b, site->e, half_length);
    for (std::size_t i = 0; i + 1 < l.states.size(); ++i) {
      const CoordState& s0 = l.states[i];
      for (const ArcRef& x : s0.tri.flippable_arcs()) {
        if (tri_key(flip_state(s0, x)).text != l.gamma[i + 1]) continue;
        if (classify_path2(s0, x, l.e).kind != Path2Class::Kind::FourCycle)
          throw VerificationFailed("witness " + l.gamma[i] + ": square " + std::to_string(i) + " is not a 4-cycle\n");
      }
    }
    std::string j = ladder_json(l, sig);
    return cfg_c_ladder.format == "dot" ? export_dot(import_json(j)) : j;
  });

  bool max_n = false;
  std::optional<int> growth_n;
  auto* c_growth = app.add_subcommand("growth", "evaluate the growth inequality");
  RunConfig& cfg_c_growth = configs.emplace_back();
  c_growth->add_flag("--max-n", max_n, "print the largest n where the inequality holds");
  c_growth->add_option("--n", growth_n, "evaluate at n")->check(CLI::PositiveNumber);
  c_growth->add_option("--out", cfg_c_growth.out, "output file (default stdout)");
  on(c_growth, cfg_c_growth, [&] {
    if (max_n) return std::to_string(growth_inequality_max_n()) + "\n";
    if (!growth_n) throw Usage("growth needs --max-n or --n");
    return std::string(growth_predicate(*growth_n) ? "true" : "false") + "\n";
  });

  auto* c_fibers = app.add_subcommand("fibers", "check the fibres of the capping projection");
  RunConfig& cfg_c_fibers = configs.emplace_back();
  add_common(c_fibers, cfg_c_fibers, true, false, 6);
  on(c_fibers, cfg_c_fibers, [&] {
    if (cfg_c_fibers.surface.empty()) cfg_c_fibers.surface = "S1,0,(1)";
    if (cfg_c_fibers.sig() != SurfaceSig(1, 0, {1})) throw Usage("fibers is defined for S1,0,(1) only");
    Ball b = ball(cfg_c_fibers.sig(), cfg_c_fibers.radius, cfg_c_fibers.ball_options());
    FiberReport rep = fiber_edges(b);
    std::ostringstream s;
    s << "vertices=" << b.size() << " type0=" << rep.type0.size() << " type1=" << rep.type1.size()
      << " bad_degree=" << rep.bad_degree_vertices << " non_path=" << rep.non_path_fibers
      << " lipschitz=" << rep.lipschitz_failures << " fiber_growth=" << rep.fiber_growth_failures << "\n";
    if (!rep.ok()) throw VerificationFailed(s.str());
    return s.str();
  });

  std::string in_path;
  auto* c_export = app.add_subcommand("export", "convert a JSON ball export");
  RunConfig& cfg_c_export = configs.emplace_back();
  add_common(c_export, cfg_c_export, false, false, -1);
  c_export->add_option("--in", in_path, "JSON export to read")->required();
  on(c_export, cfg_c_export, [&] {
    std::ifstream f(in_path);
    if (!f) throw Usage("cannot read " + in_path);
    std::stringstream buf;
    buf << f.rdbuf();
    return ball_text(import_json(buf.str()), cfg_c_export.format);
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "run with --help for usage\n";
    return kExitInput;
  }

  try {
    const std::string text = handler();
    if (active->out.empty()) {
      out << text;
    } else {
      std::ofstream f(active->out);
      f << text;
      if (!f) {
        err << "cannot write " << active->out << "\n";
        return kExitInput;
      }
    }
    return kExitOk;
  } catch (const VerificationFailed& e) {
    out << e.what();
    return kExitVerification;
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace flipgraph

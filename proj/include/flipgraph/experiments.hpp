#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "flipgraph/rigidity.hpp"

namespace flipgraph {

/// Root used for closure runs: the first fully explored vertex (key order) of
/// ball(sig, 4) in which every pair of flippable arcs shares exactly one
/// triangle, falling back to the base triangulation.
CoordState closure_root(const SurfaceSig& sig);

struct ClosureRun {
  std::unique_ptr<Ball> domain, host;
  PartialMap map;
  // Largest r such that every domain vertex at distance <= r is assigned.
  int forced_radius = -1;
  bool replay_ok = false;
};

/// Seeds the closed star of `root` by identity into ball_from(root, host_r)
/// and closes over ball_from(root, domain_r).
ClosureRun run_star_closure(const CoordState& root, int domain_r, int host_r,
                            const ClosureOptions& opts);

struct BSetForcingReport {
  int sites = 0;    // Case-3 sites whose configuration lies in the domain ball
  int outside = 0;  // sites skipped because the configuration leaves it
  int forced = 0;
  std::vector<std::string> failures;
};

/// For every ordered pair (a,b) with two common triangles at a vertex of
/// ball(sig, domain_r): build the configuration, seed T, T_b, T_c, T_e,
/// T_bc, T_cb, T_eb into ball(sig, host_r) and require R2 at T to force T_a.
BSetForcingReport run_bset_forcing(const SurfaceSig& sig, int domain_r, int host_r);

struct SegmentExtension {
  std::vector<std::string> segment;  // host keys of the first embedding
  std::vector<std::vector<std::string>> extensions;
};

/// Embeds a segment of the annulus flip graph into ball(S1,1, host_r) with
/// its first vertex at the root, then lists every extension of that
/// embedding to the segment lengthened by `extra` vertices.
SegmentExtension run_segment_extension(int host_r, int length, int extra);

struct FuzzReport {
  long long flips = 0;
  long long involution_failures = 0;
  long long arc_count_failures = 0;
  long long signature_failures = 0;
  long long key_failures = 0;
  long long ptolemy_checked = 0;
  long long ptolemy_failures = 0;
  // Failing components whose reference arc is not the flipped arc and does
  // not end inside the quadrilateral.
  long long ptolemy_unexplained = 0;
  std::string first_ptolemy_witness;
};

/// Random flip walks from the base triangulation.
FuzzReport fuzz_flips(const SurfaceSig& sig, int sequences, int length, std::uint64_t seed);

/// Ladder in the ball export schema plus a "roles" map.
std::string ladder_json(const Ladder& l, const SurfaceSig& sig);

}  // namespace flipgraph

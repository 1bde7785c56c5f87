#include "flipgraph/arcid.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "flipgraph/error.hpp"

namespace flipgraph {

namespace {

using TriangulationT = Triangulation;

int slot_at(int t, int i) { return Triangulation::slot_at(t, i); }
int tri_of(int s) { return Triangulation::tri_of(s); }
int side_of(int s) { return Triangulation::side_of(s); }
int opposite_corner(int side_slot) { return slot_at(tri_of(side_slot), side_of(side_slot) + 2); }

// A gate is where a path enters or leaves a triangle: through a side slot or
// at a corner (corner c = corner side_of(c) of triangle tri_of(c)).
struct Gate {
  bool corner = false;
  int index = -1;
};

struct Visit {
  int tri;
  Gate in, out;
};

std::vector<Visit> to_visits(const Triangulation& t, const std::vector<int>& exits) {
  std::vector<Visit> visits;
  visits.reserve(exits.size() + 1);
  visits.push_back({tri_of(exits[0]), {true, opposite_corner(exits[0])}, {false, exits[0]}});
  for (std::size_t j = 0; j < exits.size(); ++j) {
    int entry = t.partner(exits[j]);
    Gate out = j + 1 < exits.size() ? Gate{false, exits[j + 1]} : Gate{true, opposite_corner(entry)};
    visits.push_back({tri_of(entry), {false, entry}, out});
  }
  return visits;
}

std::vector<int> to_exits(const std::vector<Visit>& visits) {
  std::vector<int> exits;
  exits.reserve(visits.size());
  for (std::size_t j = 0; j + 1 < visits.size(); ++j) exits.push_back(visits[j].out.index);
  return exits;
}

// Local picture of a flip of the arc with slots s1 (in t1) and s2 (in t2).
struct FlipFrame {
  int t1, i1, t2, i2;
  int s1, s2;
  std::vector<int> moved;  // old slot -> new slot for the four outer sides

  int A() const { return slot_at(t1, i1 + 1); }
  int B() const { return slot_at(t1, i1 + 2); }
  int C() const { return slot_at(t2, i2 + 1); }
  int D() const { return slot_at(t2, i2 + 2); }
  // Old corners.
  bool is_p(int c) const { return c == slot_at(t1, i1 + 2); }
  bool is_q(int c) const { return c == slot_at(t2, i2 + 2); }
  bool is_v(int c) const { return c == slot_at(t1, i1) || c == slot_at(t2, i2 + 1); }
  bool is_w(int c) const { return c == slot_at(t1, i1 + 1) || c == slot_at(t2, i2); }
  bool in_quad(int tri) const { return tri == t1 || tri == t2; }
};

FlipFrame frame_for(const Triangulation& t, int arc_id) {
  auto [s1, s2] = t.slots_of(arc_id);
  FlipFrame f;
  f.s1 = s1;
  f.s2 = s2;
  f.t1 = tri_of(s1);
  f.i1 = side_of(s1);
  f.t2 = tri_of(s2);
  f.i2 = side_of(s2);
  f.moved.resize(t.slot_count());
  for (int s = 0; s < t.slot_count(); ++s) f.moved[s] = s;
  f.moved[f.A()] = slot_at(f.t2, f.i2 + 2);
  f.moved[f.B()] = slot_at(f.t1, f.i1 + 1);
  f.moved[f.C()] = slot_at(f.t1, f.i1 + 2);
  f.moved[f.D()] = slot_at(f.t2, f.i2 + 1);
  return f;
}

[[noreturn]] void trace_failure(const std::string& why) {
  throw Error(ErrorKind::MalformedTriangulation, "reference arc tracing: " + why);
}

// Re-routes one passage through the quadrilateral that runs from an outer
// side or corner `in` to an outer side `out` (never corner to corner).
std::vector<Visit> reroute_from(const FlipFrame& f, Gate in, int out_side) {
  const int new_out = f.moved[out_side];
  const int out_tri = tri_of(new_out);
  const int f1 = f.s1, f2 = f.s2;  // slots of the new arc in the new triangles
  if (!in.corner) {
    const int new_in = f.moved[in.index];
    if (tri_of(new_in) == out_tri) return {{out_tri, {false, new_in}, {false, new_out}}};
    const int fin = tri_of(new_in) == f.t1 ? f1 : f2;
    const int fout = fin == f1 ? f2 : f1;
    return {{tri_of(new_in), {false, new_in}, {false, fin}}, {out_tri, {false, fout}, {false, new_out}}};
  }
  const int c = in.index;
  if (f.is_p(c) || f.is_q(c)) {
    int corner;
    if (f.is_p(c))
      corner = out_tri == f.t1 ? slot_at(f.t1, f.i1 + 1) : slot_at(f.t2, f.i2);
    else
      corner = out_tri == f.t1 ? slot_at(f.t1, f.i1) : slot_at(f.t2, f.i2 + 1);
    if (opposite_corner(new_out) != corner) trace_failure("corner passage is not normal after flip");
    return {{out_tri, {true, corner}, {false, new_out}}};
  }
  if (f.is_v(c)) {
    if (out_tri != f.t2) trace_failure("passage from v must leave through the second triangle");
    return {{f.t1, {true, slot_at(f.t1, f.i1 + 2)}, {false, f1}}, {f.t2, {false, f2}, {false, new_out}}};
  }
  if (f.is_w(c)) {
    if (out_tri != f.t1) trace_failure("passage from w must leave through the first triangle");
    return {{f.t2, {true, slot_at(f.t2, f.i2 + 2)}, {false, f2}}, {f.t1, {false, f1}, {false, new_out}}};
  }
  trace_failure("corner outside the quadrilateral");
}

std::vector<Visit> reversed(std::vector<Visit> v) {
  std::reverse(v.begin(), v.end());
  for (auto& x : v) std::swap(x.in, x.out);
  return v;
}

TracedArc reroute(const Triangulation& before, const FlipFrame& f, int new_arc,
                  const TracedArc& arc, int flipped) {
  if (arc.is_edge()) {
    if (arc.edge != flipped) return arc;
    return {-1, {f.s1}};
  }
  auto visits = to_visits(before, arc.exits);
  std::vector<Visit> out;
  out.reserve(visits.size() + 4);
  std::size_t j = 0;
  while (j < visits.size()) {
    if (!f.in_quad(visits[j].tri)) {
      Visit v = visits[j];
      if (!v.in.corner) v.in.index = f.moved[v.in.index];
      if (!v.out.corner) v.out.index = f.moved[v.out.index];
      out.push_back(v);
      ++j;
      continue;
    }
    // Maximal passage inside the quadrilateral: consecutive visits joined by
    // crossings of the flipped arc.
    std::size_t k = j;
    while (k + 1 < visits.size() && !visits[k].out.corner &&
           (visits[k].out.index == f.s1 || visits[k].out.index == f.s2))
      ++k;
    Gate in = visits[j].in, last = visits[k].out;
    if (in.corner && last.corner) {
      if (j != 0 || k + 1 != visits.size()) trace_failure("corner-to-corner passage inside a path");
      return {new_arc, {}};
    }
    std::vector<Visit> piece =
        last.corner ? reversed(reroute_from(f, last, in.index)) : reroute_from(f, in, last.index);
    out.insert(out.end(), piece.begin(), piece.end());
    j = k + 1;
  }
  // Fix up the moved slot indices for visits outside the quadrilateral that
  // point into it: their gates were already remapped above.
  return {-1, to_exits(out)};
}

}  // namespace

std::string coord_text(const ArcCoord& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
  return out.str();
}

ArcCoord parse_coord(const std::string& text) {
  ArcCoord c;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      c.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad coordinate entry '" + item + "'");
    }
  }
  return c;
}

std::uint64_t digest_of(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

CoordState reference_state(const Triangulation& base) {
  CoordState state{base, {}};
  for (int id : base.arcs()) state.refs.push_back({id, {}});
  for (const ArcRef& a : base.flippable_arcs()) {
    auto [s1, s2] = base.slots_of(a.id);
    (void)s2;
    state.refs.push_back({-1, {s1}});
  }
  return state;
}

std::map<int, ArcCoord> coords_of(const CoordState& state) {
  std::map<int, ArcCoord> out;
  const int n = static_cast<int>(state.refs.size());
  for (int id : state.tri.arcs()) out[id] = ArcCoord(n, 0);
  for (int r = 0; r < n; ++r) {
    const TracedArc& arc = state.refs[r];
    if (arc.is_edge()) {
      out.at(arc.edge)[r] = -1;
      continue;
    }
    for (int s : arc.exits) ++out.at(state.tri.arc_of(s))[r];
  }
  return out;
}

ArcCoord coord_of(const CoordState& state, int arc_id) {
  const int n = static_cast<int>(state.refs.size());
  ArcCoord c(n, 0);
  for (int r = 0; r < n; ++r) {
    const TracedArc& arc = state.refs[r];
    if (arc.is_edge()) {
      if (arc.edge == arc_id) c[r] = -1;
      continue;
    }
    for (int s : arc.exits) c[r] += state.tri.arc_of(s) == arc_id ? 1 : 0;
  }
  return c;
}

std::map<int, ArcCoord> base_coords(const Triangulation& base) {
  return coords_of(reference_state(base));
}

CoordState flip_state(const CoordState& state, ArcRef a) {
  Triangulation next = state.tri.flip(a);
  FlipFrame f = frame_for(state.tri, a.id);
  const int new_arc = state.tri.next_arc_id();
  CoordState out{std::move(next), {}};
  out.refs.reserve(state.refs.size());
  for (const TracedArc& arc : state.refs)
    out.refs.push_back(reroute(state.tri, f, new_arc, arc, a.id));
  return out;
}

ArcCoord flip_coords(const CoordState& state, ArcRef a) {
  CoordState next = flip_state(state, a);
  return coord_of(next, state.tri.next_arc_id());
}

TriKey tri_key(const CoordState& state) {
  TriKey key;
  for (auto& [id, c] : coords_of(state)) key.coords.push_back(std::move(c));
  std::sort(key.coords.begin(), key.coords.end());
  std::string text;
  for (std::size_t i = 0; i < key.coords.size(); ++i) {
    if (i) text += ';';
    text += coord_text(key.coords[i]);
  }
  key.text = std::move(text);
  key.digest = digest_of(key.text);
  return key;
}

TriKey tri_key_from_text(const std::string& text) {
  TriKey key;
  key.text = text;
  key.digest = digest_of(text);
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ';')) key.coords.push_back(parse_coord(part));
  return key;
}

namespace {

bool ptolemy_applies(const Triangulation& t, ArcRef a) {
  auto [s1, s2] = t.slots_of(a.id);
  if (tri_of(s1) == tri_of(s2)) return false;
  if (t.is_folded(tri_of(s1)) || t.is_folded(tri_of(s2))) return false;
  FlipFrame f = frame_for(t, a.id);
  std::vector<int> ids;
  for (int s : {f.A(), f.B(), f.C(), f.D()}) {
    int id = t.is_boundary_slot(s) ? -1 - s : t.arc_of(s);
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) return false;
    ids.push_back(id);
  }
  return true;
}

}  // namespace

std::vector<int> ptolemy_defects(const CoordState& before, ArcRef a) {
  const Triangulation& t = before.tri;
  if (!ptolemy_applies(t, a)) return {};
  FlipFrame f = frame_for(t, a.id);
  const std::size_t n = before.refs.size();
  auto side_coord = [&](int s) {
    if (t.is_boundary_slot(s)) return ArcCoord(n, 0);
    return coord_of(before, t.arc_of(s));
  };
  auto clamp = [](int x) { return std::max(x, 0); };
  ArcCoord cA = side_coord(f.A()), cB = side_coord(f.B()), cC = side_coord(f.C()),
           cD = side_coord(f.D());
  ArcCoord ce = coord_of(before, a.id);
  ArcCoord cf = flip_coords(before, a);
  std::vector<int> bad;
  for (std::size_t r = 0; r < n; ++r) {
    int lhs = clamp(ce[r]) + clamp(cf[r]);
    int rhs = std::max(clamp(cA[r]) + clamp(cC[r]), clamp(cB[r]) + clamp(cD[r]));
    if (lhs != rhs) bad.push_back(static_cast<int>(r));
  }
  return bad;
}

std::optional<bool> ptolemy_consistent(const CoordState& before, ArcRef a) {
  if (!ptolemy_applies(before.tri, a)) return std::nullopt;
  return ptolemy_defects(before, a).empty();
}

bool ends_in_quad(const CoordState& before, ArcRef a, int r) {
  const Triangulation& t = before.tri;
  const TracedArc& arc = before.refs.at(r);
  if (arc.is_edge()) return arc.edge == a.id;
  auto [s1, s2] = t.slots_of(a.id);
  const int first = tri_of(arc.exits.front());
  const int last = tri_of(t.partner(arc.exits.back()));
  for (int q : {tri_of(s1), tri_of(s2)})
    if (first == q || last == q) return true;
  return false;
}

bool traced_paths_normal(const CoordState& state) {
  const Triangulation& t = state.tri;
  for (const TracedArc& arc : state.refs) {
    if (arc.is_edge()) {
      if (!t.has_arc(arc.edge)) return false;
      continue;
    }
    if (arc.exits.empty()) return false;
    for (std::size_t j = 0; j < arc.exits.size(); ++j) {
      int s = arc.exits[j];
      if (s < 0 || s >= t.slot_count() || t.is_boundary_slot(s)) return false;
      if (j + 1 < arc.exits.size()) {
        int entry = t.partner(s);
        int nxt = arc.exits[j + 1];
        if (tri_of(entry) != tri_of(nxt) || entry == nxt) return false;
      }
    }
  }
  return true;
}

}  // namespace flipgraph

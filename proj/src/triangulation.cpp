#include "flipgraph/triangulation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include "flipgraph/error.hpp"

namespace flipgraph {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

int next_in_tri(int slot, int k = 1) {
  return Triangulation::slot_at(Triangulation::tri_of(slot), Triangulation::side_of(slot) + k);
}

[[noreturn]] void malformed(const std::string& why) {
  throw Error(ErrorKind::MalformedTriangulation, why);
}

// Reconstruction of the surface from a gluing. Corners share the slot index
// space: corner 3t+i is corner i of triangle t.
struct Reconstruction {
  std::vector<int> corner_vertex;
  int vertices = 0;
  std::vector<bool> vertex_on_boundary;
  std::vector<int> boundary_component_sizes;
  int components = 0;
};

Reconstruction reconstruct(const std::vector<int>& pair, int triangles) {
  const int slots = 3 * triangles;
  UnionFind corners(slots);
  UnionFind tris(std::max(triangles, 1));
  for (int s = 0; s < slots; ++s) {
    int q = pair[s];
    if (q == Triangulation::kBoundary) continue;
    corners.unite(s, next_in_tri(q));
    corners.unite(next_in_tri(s), q);
    tris.unite(Triangulation::tri_of(s), Triangulation::tri_of(q));
  }
  Reconstruction r;
  r.corner_vertex.assign(slots, -1);
  std::map<int, int> index;
  for (int c = 0; c < slots; ++c) {
    auto [it, fresh] = index.emplace(corners.find(c), r.vertices);
    if (fresh) ++r.vertices;
    r.corner_vertex[c] = it->second;
  }
  std::vector<int> comps;
  for (int t = 0; t < triangles; ++t) comps.push_back(tris.find(t));
  std::sort(comps.begin(), comps.end());
  r.components = static_cast<int>(std::unique(comps.begin(), comps.end()) - comps.begin());

  r.vertex_on_boundary.assign(r.vertices, false);
  std::vector<int> out_count(r.vertices, 0), in_count(r.vertices, 0);
  std::vector<int> out_slot(r.vertices, -1);
  for (int s = 0; s < slots; ++s) {
    if (pair[s] != Triangulation::kBoundary) continue;
    int from = r.corner_vertex[s];
    int to = r.corner_vertex[next_in_tri(s)];
    r.vertex_on_boundary[from] = r.vertex_on_boundary[to] = true;
    ++out_count[from];
    ++in_count[to];
    out_slot[from] = s;
  }
  for (int v = 0; v < r.vertices; ++v) {
    if (r.vertex_on_boundary[v] && (out_count[v] != 1 || in_count[v] != 1))
      malformed("boundary is not a disjoint union of circles at vertex " + std::to_string(v));
  }
  std::vector<bool> seen(slots, false);
  for (int s = 0; s < slots; ++s) {
    if (pair[s] != Triangulation::kBoundary || seen[s]) continue;
    int size = 0;
    for (int cur = s; !seen[cur]; cur = out_slot[r.corner_vertex[next_in_tri(cur)]]) {
      seen[cur] = true;
      ++size;
    }
    r.boundary_component_sizes.push_back(size);
  }
  return r;
}

}  // namespace

Triangulation Triangulation::from_pairing(int triangles, std::vector<int> pairing,
                                          std::vector<int> arc_ids) {
  if (triangles < 0) malformed("negative triangle count");
  if (static_cast<int>(pairing.size()) != 3 * triangles) malformed("pairing size mismatch");
  Triangulation t;
  t.triangles_ = triangles;
  t.pair_ = std::move(pairing);
  if (arc_ids.empty()) {
    t.arc_.assign(t.pair_.size(), -1);
    int next = 0;
    for (int s = 0; s < t.slot_count(); ++s) {
      int q = t.pair_[s];
      if (q < 0 || q >= t.slot_count()) continue;
      if (t.arc_[s] < 0) t.arc_[s] = t.arc_[q] = next++;
    }
  } else {
    t.arc_ = std::move(arc_ids);
  }
  t.next_id_ = 0;
  for (int s = 0; s < t.slot_count(); ++s)
    if (t.pair_[s] != kBoundary) t.next_id_ = std::max(t.next_id_, t.arc_[s] + 1);
  t.validate();
  return t;
}

Triangulation Triangulation::empty(const SurfaceSig& sig) {
  if (flipgraph::triangle_count(sig) != 0)
    throw Error(ErrorKind::Precondition, sig.str() + " is triangulated by triangles");
  Triangulation t;
  t.declared_ = sig;
  return t;
}

void Triangulation::validate() {
  const int slots = slot_count();
  if (static_cast<int>(arc_.size()) != slots) malformed("arc id table size mismatch");
  std::map<int, int> seen_ids;
  for (int s = 0; s < slots; ++s) {
    int q = pair_[s];
    if (q == kBoundary) {
      arc_[s] = -1;
      continue;
    }
    if (q < 0 || q >= slots) malformed("slot " + std::to_string(s) + " paired out of range");
    if (q == s) malformed("slot " + std::to_string(s) + " paired with itself");
    if (pair_[q] != s) malformed("pairing is not an involution at slot " + std::to_string(s));
    if (arc_[s] != arc_[q] || arc_[s] < 0)
      malformed("arc ids disagree across pairing at slot " + std::to_string(s));
    if (++seen_ids[arc_[s]] > 2) malformed("arc id " + std::to_string(arc_[s]) + " reused");
  }
  if (triangles_ == 0) return;
  auto r = reconstruct(pair_, triangles_);
  if (r.components != 1) malformed("gluing is disconnected");
  SurfaceSig sig = signature();
  if (arc_count(sig) != static_cast<int>(seen_ids.size()))
    malformed("arc count does not match " + sig.str());
}

std::vector<int> Triangulation::arcs() const {
  std::vector<int> out;
  for (int s = 0; s < slot_count(); ++s)
    if (pair_[s] != kBoundary && s < pair_[s]) out.push_back(arc_[s]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Triangulation::boundary_slots() const {
  std::vector<int> out;
  for (int s = 0; s < slot_count(); ++s)
    if (pair_[s] == kBoundary) out.push_back(s);
  return out;
}

bool Triangulation::has_arc(int arc_id) const {
  for (int s = 0; s < slot_count(); ++s)
    if (pair_[s] != kBoundary && arc_[s] == arc_id) return true;
  return false;
}

std::array<int, 2> Triangulation::slots_of(int arc_id) const {
  for (int s = 0; s < slot_count(); ++s)
    if (pair_[s] != kBoundary && arc_[s] == arc_id) return {s, pair_[s]};
  throw Error(ErrorKind::NotInterior, "arc " + std::to_string(arc_id) + " is not in the triangulation");
}

bool Triangulation::is_folded(int tri) const {
  for (int i = 0; i < 3; ++i) {
    int q = pair_[slot_at(tri, i)];
    if (q != kBoundary && tri_of(q) == tri) return true;
  }
  return false;
}

int Triangulation::folded_count() const {
  int n = 0;
  for (int t = 0; t < triangles_; ++t) n += is_folded(t) ? 1 : 0;
  return n;
}

bool Triangulation::is_flippable(int arc_id) const {
  auto [s, q] = slots_of(arc_id);
  return tri_of(s) != tri_of(q);
}

std::vector<ArcRef> Triangulation::flippable_arcs() const {
  std::vector<ArcRef> out;
  for (int id : arcs())
    if (is_flippable(id)) out.push_back(ArcRef::interior(id));
  return out;
}

Triangulation Triangulation::flip(ArcRef a) const {
  if (!a.is_interior())
    throw Error(ErrorKind::NotInterior, "cannot flip boundary segment at slot " + std::to_string(a.id));
  auto [s1, s2] = slots_of(a.id);
  const int t1 = tri_of(s1), t2 = tri_of(s2);
  if (t1 == t2)
    throw Error(ErrorKind::NotFlippable,
                "arc " + std::to_string(a.id) + " is the inner side of a folded triangle");
  const int i1 = side_of(s1), i2 = side_of(s2);
  // Old sides A,B follow e in t1; C,D follow e in t2. The new triangles are
  // (f,B,C) in t1 and (f,D,A) in t2, with f at the old position of e.
  std::vector<int> moved(slot_count());
  std::iota(moved.begin(), moved.end(), 0);
  moved[slot_at(t1, i1 + 1)] = slot_at(t2, i2 + 2);  // A
  moved[slot_at(t1, i1 + 2)] = slot_at(t1, i1 + 1);  // B
  moved[slot_at(t2, i2 + 1)] = slot_at(t1, i1 + 2);  // C
  moved[slot_at(t2, i2 + 2)] = slot_at(t2, i2 + 1);  // D

  Triangulation out;
  out.triangles_ = triangles_;
  out.pair_.assign(slot_count(), kBoundary);
  out.arc_.assign(slot_count(), -1);
  for (int s = 0; s < slot_count(); ++s) {
    if (s == s1 || s == s2) continue;
    int ns = moved[s];
    out.pair_[ns] = pair_[s] == kBoundary ? kBoundary : moved[pair_[s]];
    out.arc_[ns] = arc_[s];
  }
  out.pair_[s1] = s2;
  out.pair_[s2] = s1;
  out.arc_[s1] = out.arc_[s2] = next_id_;
  out.next_id_ = next_id_ + 1;
  return out;
}

int Triangulation::common_triangles(ArcRef a, ArcRef b) const {
  if (a == b) throw Error(ErrorKind::SameArc, "common_triangles needs two distinct arcs");
  auto tris_of = [&](ArcRef r) {
    std::vector<int> ts;
    if (r.is_interior()) {
      auto [s, q] = slots_of(r.id);
      ts = {tri_of(s), tri_of(q)};
    } else {
      ts = {tri_of(r.id)};
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
  };
  auto ta = tris_of(a), tb = tris_of(b);
  int n = 0;
  for (int t : ta) n += std::count(tb.begin(), tb.end(), t) > 0 ? 1 : 0;
  return n;
}

std::vector<int> Triangulation::corner_vertices() const {
  return reconstruct(pair_, triangles_).corner_vertex;
}

int Triangulation::vertex_count() const {
  if (triangles_ == 0) return declared_ ? declared_->marked_points() : 0;
  return reconstruct(pair_, triangles_).vertices;
}

SurfaceSig Triangulation::signature() const {
  if (triangles_ == 0) {
    if (!declared_) malformed("empty triangulation without a declared surface");
    return *declared_;
  }
  auto r = reconstruct(pair_, triangles_);
  if (r.components != 1) malformed("gluing is disconnected");
  int paired = 0, unpaired = 0;
  for (int q : pair_) (q == kBoundary ? unpaired : paired) += 1;
  const int edges = paired / 2 + unpaired;
  const int euler = r.vertices - edges + triangles_;
  const int b = static_cast<int>(r.boundary_component_sizes.size());
  const int twice_genus = 2 - b - euler;
  if (twice_genus < 0 || twice_genus % 2 != 0)
    malformed("Euler characteristic " + std::to_string(euler) + " is inconsistent");
  int boundary_vertices = static_cast<int>(
      std::count(r.vertex_on_boundary.begin(), r.vertex_on_boundary.end(), true));
  return SurfaceSig(twice_genus / 2, r.vertices - boundary_vertices, r.boundary_component_sizes);
}

std::vector<SurfaceSig> Triangulation::cut_along_arcs(std::span<const ArcRef> cut) const {
  if (triangles_ == 0) return {signature()};
  std::vector<bool> is_cut(slot_count(), false);
  for (const ArcRef& r : cut) {
    if (!r.is_interior()) throw Error(ErrorKind::NotInterior, "can only cut along interior arcs");
    auto [s, q] = slots_of(r.id);
    is_cut[s] = is_cut[q] = true;
  }
  UnionFind uf(triangles_);
  for (int s = 0; s < slot_count(); ++s)
    if (pair_[s] != kBoundary && !is_cut[s]) uf.unite(tri_of(s), tri_of(pair_[s]));
  std::map<int, std::vector<int>> groups;
  for (int t = 0; t < triangles_; ++t) groups[uf.find(t)].push_back(t);
  std::vector<SurfaceSig> out;
  for (auto& [root, tris] : groups) {
    std::vector<int> renum(triangles_, -1);
    for (std::size_t k = 0; k < tris.size(); ++k) renum[tris[k]] = static_cast<int>(k);
    std::vector<int> sub(3 * tris.size(), kBoundary);
    for (int t : tris)
      for (int i = 0; i < 3; ++i) {
        int s = slot_at(t, i);
        if (pair_[s] == kBoundary || is_cut[s]) continue;
        sub[slot_at(renum[t], i)] = slot_at(renum[tri_of(pair_[s])], side_of(pair_[s]));
      }
    auto r = reconstruct(sub, static_cast<int>(tris.size()));
    int paired = 0, unpaired = 0;
    for (int q : sub) (q == kBoundary ? unpaired : paired) += 1;
    const int euler = r.vertices - (paired / 2 + unpaired) + static_cast<int>(tris.size());
    const int b = static_cast<int>(r.boundary_component_sizes.size());
    int boundary_vertices = static_cast<int>(
        std::count(r.vertex_on_boundary.begin(), r.vertex_on_boundary.end(), true));
    out.emplace_back((2 - b - euler) / 2, r.vertices - boundary_vertices, r.boundary_component_sizes);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// BFS code of a gluing read from `start`, optionally with corner labels.
std::vector<int> bfs_code(const std::vector<int>& pair, int triangles, int start,
                          std::span<const int> labels) {
  std::vector<int> label(triangles, -1), base(triangles, 0);
  std::deque<int> queue;
  int next = 0;
  label[start / 3] = next++;
  base[start / 3] = start % 3;
  queue.push_back(start / 3);
  std::vector<int> code;
  code.reserve(3 * triangles * 2);
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int k = 0; k < 3; ++k) {
      int s = 3 * t + (base[t] + k) % 3;
      if (!labels.empty()) code.push_back(labels[s]);
      int q = pair[s];
      if (q == Triangulation::kBoundary) {
        code.push_back(-1);
        continue;
      }
      int u = q / 3;
      if (label[u] < 0) {
        label[u] = next++;
        base[u] = q % 3;
        queue.push_back(u);
      }
      code.push_back(3 * label[u] + (q % 3 - base[u] + 3) % 3);
    }
  }
  return code;
}

std::string code_string(const std::vector<int>& code) {
  std::ostringstream out;
  for (std::size_t i = 0; i < code.size(); ++i) out << (i ? "." : "") << code[i];
  return out.str();
}

}  // namespace

std::string Triangulation::canonical_labelled(std::span<const int> corner_labels,
                                              bool allow_mirror) const {
  if (triangles_ == 0) return "empty:" + (declared_ ? declared_->str() : std::string("?"));
  std::vector<int> mirror_pair(slot_count());
  std::vector<int> mirror_labels;
  for (int s = 0; s < slot_count(); ++s) {
    int ms = slot_at(tri_of(s), 2 - side_of(s));
    mirror_pair[ms] = pair_[s] == kBoundary ? kBoundary
                                            : slot_at(tri_of(pair_[s]), 2 - side_of(pair_[s]));
  }
  if (!corner_labels.empty()) {
    mirror_labels.resize(slot_count());
    for (int c = 0; c < slot_count(); ++c)
      mirror_labels[c] = corner_labels[slot_at(tri_of(c), 3 - side_of(c))];
  }
  std::vector<int> best;
  for (int s = 0; s < slot_count(); ++s) {
    auto code = bfs_code(pair_, triangles_, s, corner_labels);
    if (best.empty() || code < best) best = std::move(code);
    if (allow_mirror) {
      auto mcode = bfs_code(mirror_pair, triangles_, s, mirror_labels);
      if (mcode < best) best = std::move(mcode);
    }
  }
  return code_string(best);
}

std::string Triangulation::canonical_class() const { return canonical_labelled({}, true); }

std::string Triangulation::serialize() const {
  std::ostringstream out;
  out << "triangles=" << triangles_ << '\n';
  if (triangles_ == 0 && declared_) out << "surface " << declared_->str() << '\n';
  for (int s = 0; s < slot_count(); ++s) {
    int q = pair_[s];
    if (q == kBoundary) {
      out << "boundary (" << tri_of(s) << ',' << side_of(s) << ")\n";
    } else if (s < q) {
      out << "pair (" << tri_of(s) << ',' << side_of(s) << ")-(" << tri_of(q) << ','
          << side_of(q) << ")\n";
    }
  }
  return out.str();
}

Triangulation Triangulation::parse(std::string_view text) {
  static const std::regex header(R"(triangles=(\d+))");
  static const std::regex pair_line(R"(pair \((\d+),([012])\)-\((\d+),([012])\))");
  static const std::regex boundary_line(R"(boundary \((\d+),([012])\))");
  static const std::regex surface_line(R"(surface (\S+))");
  std::istringstream in{std::string(text)};
  std::string line;
  int triangles = -1;
  std::vector<int> pairing;
  std::vector<bool> assigned;
  std::optional<SurfaceSig> declared;
  auto slot_checked = [&](const std::string& t, const std::string& i, const std::string& where) {
    int tri = std::stoi(t);
    if (tri >= triangles)
      throw Error(ErrorKind::Parse, "triangle index out of range in '" + where + "'");
    int s = slot_at(tri, std::stoi(i));
    if (assigned[s]) throw Error(ErrorKind::Parse, "slot listed twice in '" + where + "'");
    assigned[s] = true;
    return s;
  };
  std::smatch m;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (triangles < 0) {
      if (!std::regex_match(line, m, header))
        throw Error(ErrorKind::Parse, "expected 'triangles=<k>', got '" + line + "'");
      triangles = std::stoi(m[1]);
      pairing.assign(3 * triangles, kBoundary);
      assigned.assign(3 * triangles, false);
    } else if (std::regex_match(line, m, pair_line)) {
      int a = slot_checked(m[1], m[2], line);
      int b = slot_checked(m[3], m[4], line);
      pairing[a] = b;
      pairing[b] = a;
    } else if (std::regex_match(line, m, boundary_line)) {
      slot_checked(m[1], m[2], line);
    } else if (std::regex_match(line, m, surface_line)) {
      declared = SurfaceSig::parse(m[1].str());
    } else {
      throw Error(ErrorKind::Parse, "unrecognized line '" + line + "'");
    }
  }
  if (triangles < 0) throw Error(ErrorKind::Parse, "missing 'triangles=' header");
  if (triangles == 0) {
    if (!declared) throw Error(ErrorKind::Parse, "empty triangulation needs a 'surface' line");
    return empty(*declared);
  }
  for (int s = 0; s < 3 * triangles; ++s)
    if (!assigned[s]) throw Error(ErrorKind::Parse, "slot " + std::to_string(s) + " not listed");
  return from_pairing(triangles, std::move(pairing));
}

Triangulation base_triangulation(const SurfaceSig& sig) {
  if (arc_count(sig) == 0 && triangle_count(sig) == 0) return Triangulation::empty(sig);
  // Boundary word of a polygon whose side pairings produce the surface. All
  // polygon corners become marked points.
  struct Side {
    int letter;  // -1 for a boundary segment
  };
  std::vector<Side> word;
  int letter = 0;
  for (int h = 0; h < sig.genus(); ++h) {
    int a = letter++, b = letter++;
    word.insert(word.end(), {{a}, {b}, {a}, {b}});
  }
  auto boundary_run = [&](int p) {
    for (int k = 0; k < p; ++k) word.push_back({-1});
  };
  const auto& bd = sig.boundary();
  std::size_t first_component = 0;
  if (sig.interior() == 0) {
    boundary_run(bd.front());
    first_component = 1;
  }
  for (int k = 1; k < sig.interior(); ++k) {
    int c = letter++;
    word.insert(word.end(), {{c}, {c}});
  }
  for (std::size_t k = first_component; k < bd.size(); ++k) {
    int d = letter++;
    word.push_back({d});
    boundary_run(bd[k]);
    word.push_back({d});
  }
  const int m = static_cast<int>(word.size());
  if (m < 3)
    throw Error(ErrorKind::NoTriangulation, sig.str() + " cannot be cut into triangles");

  const int triangles = m - 2;
  std::vector<int> pair(3 * triangles, Triangulation::kBoundary);
  auto polygon_slot = [&](int j) {
    if (j == 0) return Triangulation::slot_at(0, 0);
    if (j == m - 1) return Triangulation::slot_at(m - 3, 2);
    return Triangulation::slot_at(j - 1, 1);
  };
  for (int t = 0; t + 1 < triangles; ++t) {
    int a = Triangulation::slot_at(t, 2), b = Triangulation::slot_at(t + 1, 0);
    pair[a] = b;
    pair[b] = a;
  }
  std::map<int, int> first_side;
  for (int j = 0; j < m; ++j) {
    if (word[j].letter < 0) continue;
    auto [it, fresh] = first_side.emplace(word[j].letter, j);
    if (!fresh) {
      int a = polygon_slot(it->second), b = polygon_slot(j);
      pair[a] = b;
      pair[b] = a;
    }
  }
  Triangulation t = Triangulation::from_pairing(triangles, std::move(pair));
  if (t.signature() != sig)
    throw Error(ErrorKind::MalformedTriangulation,
                "base construction produced " + t.signature().str() + " for " + sig.str());
  return t;
}

}  // namespace flipgraph

// Regenerates data/exceptional_table.txt: every component obtained by cutting
// a triangulation of S0,1..S0,4, S1,1 or S1,2 along any subset of its arcs.
#include <fstream>
#include <iostream>
#include <set>

#include "flipgraph/error.hpp"
#include "flipgraph/oracles.hpp"
#include "flipgraph/triangulation.hpp"

using namespace flipgraph;

int main(int argc, char** argv) {
  const char* ambient[] = {"S0,1", "S0,2", "S0,3", "S0,4", "S1,1", "S1,2"};
  std::set<SurfaceSig> found;
  for (const char* text : ambient) {
    const SurfaceSig sig = SurfaceSig::parse(text);
    found.insert(sig);
    if (triangle_count(sig) == 0) continue;
    for (const Triangulation& t : oracles::enumerate_all(sig)) {
      const std::vector<int> arcs = t.arcs();
      const int n = static_cast<int>(arcs.size());
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<ArcRef> cut;
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1) cut.push_back(ArcRef::interior(arcs[i]));
        for (const SurfaceSig& piece : t.cut_along_arcs(cut)) found.insert(piece);
      }
    }
  }
  std::ofstream file;
  if (argc > 1) file.open(argv[1]);
  std::ostream& out = argc > 1 ? file : std::cout;
  out << "# essential subsurfaces of S0,1..S0,4, S1,1, S1,2 (regenerate with gen_exceptional)\n";
  for (const SurfaceSig& s : found) out << s.str() << "\n";
  return out ? 0 : 1;
}

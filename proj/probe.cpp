// scratch probe, not part of the build
#include <cstdio>

#include "core/graph.hpp"
#include "core/map_spec.hpp"
#include "core/mincut.hpp"
#include "core/rollout.hpp"
#include "core/shaping.hpp"

using namespace zidlab;

int main() {
  const char *variants[] = {"maps/density.map", "maps/density_m1.map",
                            "maps/density_m2.map", "maps/density_m3.map",
                            "maps/density_m4.map"};
  for (const char *path : variants) {
    MapSpec spec = parse_map_file(path);
    InducedGraph g = enumerate_graph(spec, 100000);
    auto [num, den] = density_rational(g);
    auto table = exact_exit_probability(g, 14);
    std::printf("%s |V|=%zu |E|=%zu E+=%lld/%lld  p12=%.6f p13=%.6f p14=%.6f\n",
                path, g.vertices.size(), g.edges.size(), num, den, table[12],
                table[13], table[14]);
  }

  for (const char *path : {"maps/two_lasers.map", "maps/two_lasers_rewarded.map",
                           "maps/two_lasers_small.map"}) {
    MapSpec spec = parse_map_file(path);
    InducedGraph g = enumerate_graph(spec, 2000000);
    CutReport cut = min_cut_ssb(g);
    std::printf("%s |V|=%zu |E|=%zu cut=%d zid=%d maxw=%.1f walk=%d\n", path,
                g.vertices.size(), g.edges.size(), cut.cut_size,
                (int)cut.is_zid, cut.max_cut_weight, (int)has_winning_walk(g));
    for (int e : cut.cut_edges) {
      const auto &ed = g.edges[(size_t)e];
      std::printf("   cut edge: %s -[%s]-> %s w=%.1f\n",
                  g.vertices[(size_t)ed.src].c_str(), ed.action.c_str(),
                  g.vertices[(size_t)ed.dst].c_str(), ed.w);
    }
  }

  for (int d = 0; d <= 4; ++d) {
    MapSpec spec = parse_map_file("maps/two_lasers_small.map");
    AugmentedGraph ag = enumerate_augmented(spec, d, 5000000);
    std::printf("two_lasers_small d=%d augmented |V|=%zu |E|=%zu\n", d,
                ag.graph.vertices.size(), ag.graph.edges.size());
  }
  return 0;
}

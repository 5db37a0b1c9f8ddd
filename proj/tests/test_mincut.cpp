#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "core/mincut.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace zidlab;

namespace {

// Random graph with mostly forward edges and a few back edges; vertex 0 is
// initial, vertex n-1 the goal sink. Regenerates until the goal is
// reachable.
InducedGraph random_cut_graph(Rng &rng) {
  for (;;) {
    const int n = 4 + static_cast<int>(rng.next_below(11)); // 4..14
    std::vector<std::tuple<int, int, double>> edges;
    for (int u = 0; u < n - 1; ++u)
      for (int v = 0; v < n; ++v) {
        if (u == v)
          continue;
        const bool forward = v > u;
        const auto roll = rng.next_below(100);
        if ((forward && roll < 30) || (!forward && roll < 8)) {
          const double w = rng.next_below(10) == 0 ? 1.0 : 0.0;
          edges.emplace_back(u, v, w);
        }
      }
    InducedGraph g = make_graph(n, edges, {0}, {n - 1});
    // goal must be a sink
    bool goal_sink = g.out[static_cast<size_t>(n - 1)].empty();
    if (goal_sink && has_winning_walk(g))
      return g;
  }
}

} // namespace

TEST_CASE("single edge graph") {
  InducedGraph g = make_graph(2, {{0, 1, 1.0}}, {0}, {1});
  CutReport cut = min_cut_ssb(g);
  CHECK(cut.cut_size == 1);
  CHECK(cut.cut_edges == std::vector<int>{0});
  CHECK(cut.max_cut_weight == 1.0);
  CHECK_FALSE(cut.is_zid);
}

TEST_CASE("two-room doorway map has a one-edge bottleneck") {
  MapSpec spec = parse_map_file(map_path("doorway.map"));
  InducedGraph g = enumerate_graph(restrict_agents(spec, 1), 100000);
  CutReport cut = min_cut_ssb(g);
  CHECK(cut.cut_size == 1);
  CHECK(cut.cut_size == oracles::brute_force_min_cut(g));
  // the one cut edge enters the doorway tile from the start side
  const auto &e = g.edges[static_cast<size_t>(cut.cut_edges[0])];
  CHECK(g.vertices[static_cast<size_t>(e.dst)].rfind("3,1,", 0) == 0);
  CHECK(cut.is_zid); // crossing the doorway pays nothing
}

TEST_CASE("random graphs match the brute-force oracle") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    InducedGraph g = random_cut_graph(rng);
    CutReport cut = min_cut_ssb(g);
    CHECK(cut.cut_size == oracles::brute_force_min_cut(g));
    // cut validity
    CHECK_FALSE(oracles::winning_walk_without(g, cut.cut_edges));
    // minimality: dropping any single cut edge restores a walk
    for (size_t skip = 0; skip < cut.cut_edges.size(); ++skip) {
      std::vector<int> subset;
      for (size_t i = 0; i < cut.cut_edges.size(); ++i)
        if (i != skip)
          subset.push_back(cut.cut_edges[i]);
      CHECK(oracles::winning_walk_without(g, subset));
    }
  }
}

TEST_CASE("two-laser map: the crossing transitions form a zero-incentive cut") {
  MapSpec spec = parse_map_file(map_path("two_lasers.map"));
  InducedGraph g = enumerate_graph(spec, 1000000);
  CutReport cut = min_cut_ssb(g);
  CHECK(cut.cut_size == 4);
  CHECK(cut.is_zid);
  CHECK(cut.max_cut_weight == 0.0);
  // every cut edge moves agent 1 onto the laser-0 crossing tile (2,2) while
  // agent 0 holds the blocking tile (1,2)
  for (int e : cut.cut_edges) {
    const auto &edge = g.edges[static_cast<size_t>(e)];
    const std::string &dst = g.vertices[static_cast<size_t>(edge.dst)];
    CHECK(dst.find("1,2,A;2,2,A") != std::string::npos);
  }
  // deleting the cut leaves no winning walk, any proper subset does
  CHECK_FALSE(oracles::winning_walk_without(g, cut.cut_edges));
  for (size_t skip = 0; skip < cut.cut_edges.size(); ++skip) {
    std::vector<int> subset;
    for (size_t i = 0; i < cut.cut_edges.size(); ++i)
      if (i != skip)
        subset.push_back(cut.cut_edges[i]);
    CHECK(oracles::winning_walk_without(g, subset));
  }
}

TEST_CASE("rewarded bottleneck is not zero-incentive") {
  MapSpec spec = parse_map_file(map_path("rewarded_lasers.map"));
  InducedGraph g = enumerate_graph(spec, 1000000);
  CutReport cut = min_cut_ssb(g);
  CHECK_FALSE(cut.is_zid);
  CHECK(cut.max_cut_weight > 0.0);
}

TEST_CASE("raising a cut edge weight flips the classification") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    InducedGraph g = random_cut_graph(rng);
    for (auto &e : g.edges)
      e.w = 0.0; // force a zero-incentive baseline
    CutReport before = min_cut_ssb(g);
    CHECK(before.is_zid);
    InducedGraph raised = g;
    raised.edges[static_cast<size_t>(before.cut_edges[0])].w = 2.5;
    CutReport after = min_cut_ssb(raised);
    // capacities are unchanged, so the canonical cut is identical
    CHECK(after.cut_edges == before.cut_edges);
    CHECK_FALSE(after.is_zid);
    CHECK(after.max_cut_weight == 2.5);
  }
}

TEST_CASE("error cases") {
  InducedGraph unreachable = make_graph(3, {{0, 1, 0.0}}, {0}, {2});
  CHECK_THROWS_WITH_AS(min_cut_ssb(unreachable),
                       doctest::Contains("NoWinningWalk"), ZidError);
  InducedGraph no_goal = make_graph(2, {{0, 1, 0.0}}, {0}, {});
  CHECK_THROWS_AS(min_cut_ssb(no_goal), ZidError);
}

TEST_CASE("exhaustive minimum-cut enumeration") {
  // diamond: two parallel two-edge routes, four minimum cuts of size 2
  InducedGraph g = make_graph(
      4, {{0, 1, 0.0}, {0, 2, 0.0}, {1, 3, 0.0}, {2, 3, 0.0}}, {0}, {3});
  auto cuts = enumerate_min_cuts(g);
  CHECK(cuts.size() == 4);
  for (const auto &cut : cuts) {
    CHECK(cut.size() == 2);
    CHECK_FALSE(oracles::winning_walk_without(g, cut));
  }
  CutReport canonical = min_cut_ssb(g);
  std::vector<int> sorted = canonical.cut_edges;
  std::sort(sorted.begin(), sorted.end());
  bool found = false;
  for (const auto &cut : cuts)
    found |= cut == sorted;
  CHECK(found);

  CHECK_THROWS_AS(enumerate_min_cuts(g, 1), ZidError);
}

TEST_CASE("incentive classification from traces") {
  // s0 -e0-> s1 -e1-> s2(goal); cut edge is e0
  InducedGraph g =
      make_graph(3, {{0, 1, 0.0}, {1, 1, 0.0}, {1, 2, 1.0}}, {0}, {2});
  CutReport cut = min_cut_ssb(g);
  REQUIRE(cut.cut_size == 1);

  SUBCASE("zero incentive short-circuits") {
    CHECK(cut.is_zid);
    IncentiveReport r = classify_incentive(g, cut, {});
    CHECK(r.classification == "zero_incentive");
  }
  SUBCASE("delayed reward shows up as a positive offset") {
    CutReport forced = cut;
    forced.is_zid = false; // pretend the cut carries reward elsewhere
    Trace trace{{"v0", "a0", 0.0}, {"v1", "a1", 0.0}, {"v1", "a1", 0.0},
                {"v1", "a2", 1.0}};
    IncentiveReport r = classify_incentive(g, forced, {trace});
    CHECK(r.classification == "delayed");
    CHECK(r.traversals == 1);
    CHECK(r.delay_histogram.at(3) == 1);
    CHECK(r.mean_delay == 3.0);
  }
  SUBCASE("reward on the cut edge itself is immediate") {
    InducedGraph g2 = make_graph(2, {{0, 1, 1.0}}, {0}, {1});
    CutReport c2 = min_cut_ssb(g2);
    Trace trace{{"v0", "a0", 1.0}};
    IncentiveReport r = classify_incentive(g2, c2, {trace});
    CHECK(r.classification == "immediate");
    CHECK(r.delay_histogram.at(0) == 1);
  }
  SUBCASE("traces that never traverse the cut are insufficient") {
    CutReport forced = cut;
    forced.is_zid = false;
    Trace trace{{"v1", "a1", 0.0}};
    CHECK_THROWS_WITH_AS(classify_incentive(g, forced, {trace}),
                         doctest::Contains("InsufficientTraces"), ZidError);
  }
}

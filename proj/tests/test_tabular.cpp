#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/rng.hpp"
#include "core/tabular.hpp"
#include "test_util.hpp"

using namespace zidlab;

TEST_CASE("value iteration on chains") {
  SUBCASE("one-step reward") {
    InducedGraph g = make_graph(2, {{0, 1, 1.0}}, {0}, {1});
    auto vi = value_iteration(g, 0.95, 1e-12);
    CHECK(vi.values[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(vi.values[1] == 0.0);
    CHECK(vi.greedy_edges[0] == std::vector<int>{0});
  }
  SUBCASE("discounting compounds along the chain") {
    InducedGraph g = make_graph(
        4, {{0, 1, 0.0}, {1, 2, 0.0}, {2, 3, 1.0}, {0, 0, 0.0}}, {0}, {3});
    auto vi = value_iteration(g, 0.9, 1e-12);
    CHECK(vi.values[0] == doctest::Approx(0.81).epsilon(1e-9));
    CHECK(vi.values[2] == doctest::Approx(1.0).epsilon(1e-9));
    // the self-loop at 0 is strictly worse, not in the greedy set
    CHECK(vi.greedy_edges[0] == std::vector<int>{0});
  }
  SUBCASE("ties are preserved") {
    InducedGraph g = make_graph(
        4, {{0, 1, 0.0}, {0, 2, 0.0}, {1, 3, 1.0}, {2, 3, 1.0}}, {0}, {3});
    auto vi = value_iteration(g, 0.9, 1e-12);
    CHECK(vi.greedy_edges[0].size() == 2);
  }
  SUBCASE("non-finite weights are rejected") {
    InducedGraph g = make_graph(2, {{0, 1, 1.0}}, {0}, {1});
    g.edges[0].w = std::numeric_limits<double>::infinity();
    CHECK_THROWS_WITH_AS(value_iteration(g, 0.9, 1e-10),
                         doctest::Contains("NonFinite"), ZidError);
  }
}

TEST_CASE("value iteration on the reduced two-laser map") {
  MapSpec spec = parse_map_file(map_path("two_lasers_small.map"));
  InducedGraph g = enumerate_graph(spec, 1000000);
  auto vi = value_iteration(g, 0.95, 1e-10);
  REQUIRE(has_winning_walk(g));
  for (int v : g.initial)
    CHECK(vi.values[static_cast<size_t>(v)] > 0.0);
}

TEST_CASE("PBRS leaves greedy action sets unchanged") {
  MapSpec spec = parse_map_file(map_path("two_lasers_small.map"));
  SUBCASE("delayed potential, d = 0 and 2") {
    for (int d : {0, 2}) {
      AugmentedGraph aug = enumerate_augmented(spec, d, 1000000);
      InducedGraph shaped = apply_shaping(aug.graph, aug.phi, 0.95, false);
      auto base = value_iteration(aug.graph, 0.95, 1e-10);
      auto after = value_iteration(shaped, 0.95, 1e-10);
      REQUIRE(base.greedy_edges.size() == after.greedy_edges.size());
      for (size_t v = 0; v < base.greedy_edges.size(); ++v)
        CHECK(base.greedy_edges[v] == after.greedy_edges[v]);
    }
  }
  SUBCASE("any bounded potential that vanishes at sinks") {
    InducedGraph g = enumerate_graph(spec, 1000000);
    Rng rng(17);
    std::vector<double> phi(g.vertices.size());
    for (size_t v = 0; v < phi.size(); ++v)
      phi[v] = g.out[v].empty() ? 0.0 : 4.0 * rng.next_double() - 2.0;
    InducedGraph shaped = apply_shaping(g, phi, 0.95, false);
    auto base = value_iteration(g, 0.95, 1e-10);
    auto after = value_iteration(shaped, 0.95, 1e-10);
    for (size_t v = 0; v < base.greedy_edges.size(); ++v)
      CHECK(base.greedy_edges[v] == after.greedy_edges[v]);
  }
}

TEST_CASE("epsilon schedule") {
  LearnSchedule s;
  s.eps_anneal_steps = 1000;
  CHECK(epsilon_at(s, 0) == 1.0);
  CHECK(epsilon_at(s, 500) == doctest::Approx(0.525));
  CHECK(epsilon_at(s, 1000) == 0.05);
  CHECK(epsilon_at(s, 100000) == 0.05);
}

TEST_CASE("state key packing is injective over reachable states") {
  MapSpec spec = parse_map_file(map_path("two_lasers_small.map"));
  const int d = 3;
  AugmentedGraph aug = enumerate_augmented(spec, d, 1000000);
  StateKeyPacker packer(spec, true, d);
  std::unordered_map<std::uint64_t, std::string> seen;
  for (size_t v = 0; v < aug.states.size(); ++v) {
    const auto key = packer.pack(aug.states[v].world, &aug.states[v].counters);
    auto [it, inserted] = seen.emplace(key, aug.graph.vertices[v]);
    if (!inserted)
      CHECK(it->second == aug.graph.vertices[v]);
  }
  CHECK(seen.size() == aug.states.size());
}

TEST_CASE("q-learning converges on a deterministic corridor") {
  MapSpec spec = parse_map("S0 . . X");
  LearnSchedule sched;
  sched.total_steps = 30000;
  sched.eps_anneal_steps = 5000;
  sched.gamma = 0.9;
  sched.learning_rate = 0.2;
  sched.eval_interval = 10000;
  sched.eval_episodes = 4;
  sched.horizon = 30;
  QLearnResult r = q_learning(spec, std::nullopt, sched, 9);
  CHECK(r.final_exit_rate == 1.0);
  CHECK(r.states_seen == 3);

  // determinism
  QLearnResult r2 = q_learning(spec, std::nullopt, sched, 9);
  REQUIRE(r.curve.size() == r2.curve.size());
  for (size_t i = 0; i < r.curve.size(); ++i) {
    CHECK(r.curve[i].step == r2.curve[i].step);
    CHECK(r.curve[i].exit_rate == r2.curve[i].exit_rate);
  }
}

TEST_CASE("q values approach the closed-form discounted return") {
  MapSpec spec = parse_map("S0 . . X");
  LearnSchedule sched;
  sched.total_steps = 60000;
  sched.eps_anneal_steps = 1; // almost pure greedy after the first step
  sched.eps_end = 0.3;        // but keep exploring everywhere
  sched.gamma = 0.9;
  sched.learning_rate = 0.5;
  sched.eval_interval = 60000;
  sched.eval_episodes = 1;
  sched.horizon = 40;
  QLearnResult r = q_learning(spec, std::nullopt, sched, 21);
  CHECK(r.final_exit_rate == 1.0);

  // inspect the learned value at the start state: V = gamma^2
  StateKeyPacker packer(spec, false, 0);
  // re-run learning to rebuild the table (q_learning does not expose it);
  // greedy_eval instead certifies the policy, value checked via a fresh
  // table trained by hand
  QTable table;
  Rng rng(4);
  WorldState s = initial_state(spec);
  std::vector<JointAction> actions;
  for (int t = 0; t < 60000; ++t) {
    available_actions(spec, s, actions);
    const size_t n = actions.size();
    auto &q = table[packer.pack(s, nullptr)];
    q.resize(n, 0.0);
    const size_t pick = rng.next_below(n);
    StepOutcome o = step(spec, s, actions[pick], 40, false);
    double target = o.reward;
    if (!o.terminal) {
      available_actions(spec, o.next, actions);
      auto &qn = table[packer.pack(o.next, nullptr)];
      qn.resize(actions.size(), 0.0);
      double best = qn.empty() ? 0.0 : *std::max_element(qn.begin(), qn.end());
      target += 0.9 * best;
    }
    q[pick] += 0.5 * (target - q[pick]);
    s = (o.terminal || o.truncated) ? initial_state(spec) : o.next;
  }
  const auto &q0 = table[packer.pack(initial_state(spec), nullptr)];
  const double v0 = *std::max_element(q0.begin(), q0.end());
  CHECK(v0 == doctest::Approx(0.81).epsilon(1e-6));
}

TEST_CASE("greedy evaluation") {
  SUBCASE("lowest-index rollout that loops never exits") {
    // from the start the first available move goes north, away from the
    // exit, and the empty table keeps choosing it
    MapSpec spec = parse_map(".\nS0\nX");
    StateKeyPacker packer(spec, false, 0);
    QTable empty;
    CHECK(greedy_eval(empty, spec, std::nullopt, packer, 8, 20, 1) == 0.0);
  }
  SUBCASE("deterministic env and tie-break give the same rate for any seed") {
    MapSpec spec = parse_map("S0 . . X");
    StateKeyPacker packer(spec, false, 0);
    QTable empty;
    const double a = greedy_eval(empty, spec, std::nullopt, packer, 8, 20, 1);
    const double b = greedy_eval(empty, spec, std::nullopt, packer, 8, 20, 999);
    CHECK(a == b);
    CHECK(a == 1.0); // east is the first available move here and reaches X
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <unordered_map>

#include "core/rng.hpp"
#include "core/shaping.hpp"
#include "test_util.hpp"

using namespace zidlab;

TEST_CASE("delayed potential") {
  CrossingCounters c = CrossingCounters::fresh(2, 2);
  SUBCASE("all uncrossed pairs count") {
    for (int d = 0; d <= 4; ++d)
      CHECK(delayed_potential(c, d) == -4.0);
  }
  SUBCASE("aged entries stop counting") {
    c.at(0, 0) = 3;
    CHECK(delayed_potential(c, 2) == -3.0);
  }
  SUBCASE("all aged means zero") {
    c.at(0, 0) = c.at(0, 1) = c.at(1, 0) = c.at(1, 1) = 5;
    CHECK(delayed_potential(c, 2) == 0.0);
  }
}

TEST_CASE("counter updates") {
  CrossingCounters c = CrossingCounters::fresh(1, 2);
  SUBCASE("first crossing starts at zero") {
    auto next = update_counters(c, {Crossing{0, 1}});
    CHECK(next.at(0, 1) == 0);
    CHECK(next.at(0, 0) == -1);
  }
  SUBCASE("re-crossing increments without reset") {
    c.at(0, 1) = 2;
    auto next = update_counters(c, {Crossing{0, 1}});
    CHECK(next.at(0, 1) == 3);
  }
  SUBCASE("no crossings still ages counted entries") {
    c.at(0, 0) = 0;
    auto next = update_counters(c, {});
    CHECK(next.at(0, 0) == 1);
    CHECK(next.at(0, 1) == -1);
  }
}

TEST_CASE("observation augmentation") {
  CrossingCounters c = CrossingCounters::fresh(2, 2);
  c.at(0, 1) = 3;
  SUBCASE("cap at d+1") {
    CHECK(augment_observation("k", c, 0, 2) == "k|c-1,3");
    c.at(0, 1) = 9;
    CHECK(augment_observation("k", c, 0, 2) == "k|c-1,3"); // 9 capped to 3
  }
  SUBCASE("fresh counters key identically") {
    CrossingCounters f1 = CrossingCounters::fresh(2, 2);
    CrossingCounters f2 = CrossingCounters::fresh(2, 2);
    CHECK(augment_observation("k", f1, 1, 4) ==
          augment_observation("k", f2, 1, 4));
  }
  SUBCASE("states equal except counters get distinct keys") {
    CrossingCounters f = CrossingCounters::fresh(2, 2);
    CHECK(augment_observation("k", c, 0, 4) !=
          augment_observation("k", f, 0, 4));
    CHECK(augment_key_joint("k", c, 4) != augment_key_joint("k", f, 4));
  }
}

namespace {

// single agent, own-color laser between start row and exit
const char *kOneLaserMap = "L0E . .\nS0 . X";

// Scripted crossing trace: E (step 1), N onto the beam (step 2, the
// crossing), then stays. Returns shaped deltas per step.
std::vector<double> run_one_laser(int d, double gamma, int n_steps,
                                  int horizon, bool flush = true,
                                  bool strict = false,
                                  double *sum_base = nullptr) {
  MapSpec spec = parse_map(kOneLaserMap);
  ShapedEnv env(spec, ShapingConfig{d, gamma, strict, flush});
  env.reset();
  WorldState s = initial_state(spec);
  std::vector<double> deltas;
  const char *script = "EN"; // then stay forever
  for (int t = 0; t < n_steps; ++t) {
    const char mv = t < 2 ? script[t] : '.';
    ShapedStep o = env.step(s, joint(std::string(1, mv)), horizon);
    deltas.push_back(o.shaped_reward - o.base.reward);
    if (sum_base)
      *sum_base += o.base.reward;
    if (o.base.terminal || o.base.truncated)
      break;
    s = o.base.next;
  }
  return deltas;
}

} // namespace

TEST_CASE("pulse lands d+1 steps after the crossing") {
  // crossing happens on step 2 (1-based)
  for (int d = 0; d <= 4; ++d) {
    auto deltas = run_one_laser(d, 1.0, 12, 0);
    REQUIRE(deltas.size() == 12);
    for (size_t k = 0; k < deltas.size(); ++k) {
      const int step = static_cast<int>(k) + 1;
      if (step == 2 + d + 1)
        CHECK(deltas[k] == doctest::Approx(1.0).epsilon(1e-12));
      else
        CHECK(deltas[k] == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("pulse value is exactly +1 under discounting") {
  const double gamma = 0.95;
  const int d = 2;
  auto deltas = run_one_laser(d, gamma, 12, 0);
  for (size_t k = 0; k < deltas.size(); ++k) {
    const int step = static_cast<int>(k) + 1;
    if (step == 2 + d + 1) {
      // gamma*0 - (-1)
      CHECK(deltas[k] == doctest::Approx(1.0).epsilon(1e-12));
    } else if (step < 2 + d + 1) {
      // constant potential -1 leaks (1-gamma) per step
      CHECK(deltas[k] == doctest::Approx(1.0 - gamma).epsilon(1e-12));
    } else {
      CHECK(deltas[k] == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("strict printed sign flips the potential difference") {
  const double gamma = 0.95;
  auto deltas = run_one_laser(2, gamma, 12, 0, true, true);
  // pre-pulse steps: gamma*(-1) - (-1) becomes gamma*(-1) + 1 in both
  // conventions; at the pulse the strict form pays gamma*(-1) - 0 instead
  const int pulse = 2 + 2 + 1;
  CHECK(deltas[static_cast<size_t>(pulse - 1)] ==
        doctest::Approx(-gamma).epsilon(1e-12));
}

TEST_CASE("truncation flush releases pending pulses") {
  SUBCASE("crossed but unpaid pair pays at the horizon") {
    // horizon 5 cuts the episode before the d=4 pulse step (2+5)
    auto deltas = run_one_laser(4, 1.0, 12, 5);
    REQUIRE(deltas.size() == 5);
    double total = 0;
    for (double x : deltas)
      total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(deltas.back() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("never-crossed pairs do not flush") {
    MapSpec spec = parse_map(kOneLaserMap);
    ShapedEnv env(spec, ShapingConfig{3, 1.0, false, true});
    env.reset();
    WorldState s = initial_state(spec);
    double total = 0;
    for (int t = 0; t < 4; ++t) {
      ShapedStep o = env.step(s, joint("."), 4);
      total += o.shaped_reward - o.base.reward;
      if (o.base.truncated)
        break;
      s = o.base.next;
    }
    CHECK(total == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("flush disabled keeps the pending potential") {
    auto deltas = run_one_laser(4, 1.0, 12, 5, false);
    double total = 0;
    for (double x : deltas)
      total += x;
    CHECK(total == doctest::Approx(0.0).epsilon(1e-12));
  }
}

namespace {

// Cooperative win on the small two-laser map; all four (agent, laser) pairs
// cross. Joint actions as two-char strings, agent 0 first.
const std::vector<std::string> kWinScript = {
    "EE", "S.", ".S", ".S", ".W", ".S", "S.", "E.", "S.", "S.", ".S"};

} // namespace

TEST_CASE("bonus conservation across delays on a full win") {
  MapSpec spec = parse_map_file(map_path("two_lasers_small.map"));
  for (int d = 0; d <= 4; ++d) {
    ShapedEnv env(spec, ShapingConfig{d, 1.0, false, true});
    env.reset();
    WorldState s = initial_state(spec);
    double base_total = 0, shaped_total = 0;
    bool terminal = false;
    for (const auto &mv : kWinScript) {
      ShapedStep o = env.step(s, joint(mv), 0);
      base_total += o.base.reward;
      shaped_total += o.shaped_reward;
      terminal = o.base.terminal;
      s = o.base.next;
    }
    CHECK(terminal);
    CHECK(base_total == doctest::Approx(2.0));
    // one pulse per crossed pair, for every delay
    CHECK(shaped_total - base_total == doctest::Approx(4.0).epsilon(1e-9));
  }
}

TEST_CASE("discounted shaped return telescopes") {
  MapSpec spec = parse_map_file(map_path("two_lasers_small.map"));
  const double gamma = 0.95;
  Rng rng(11);
  for (int episode = 0; episode < 40; ++episode) {
    ShapedEnv env(spec, ShapingConfig{2, gamma, false, true});
    env.reset();
    WorldState s = initial_state(spec);
    std::vector<JointAction> actions;
    double lhs = 0.0, discount = 1.0;
    double phi0 = 0.0, phiT = 0.0;
    int T = 0;
    for (int t = 0; t < 25; ++t) {
      available_actions(spec, s, actions);
      ShapedStep o = env.step(
          s, actions[static_cast<size_t>(rng.next_below(actions.size()))], 25);
      if (t == 0)
        phi0 = o.potential_before;
      lhs += discount * (o.shaped_reward - o.base.reward);
      discount *= gamma;
      phiT = o.potential_after;
      ++T;
      if (o.base.terminal || o.base.truncated)
        break;
      s = o.base.next;
    }
    const double rhs = std::pow(gamma, T) * phiT - phi0;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("wrapper rewards match the shaped augmented graph") {
  MapSpec spec = parse_map_file(map_path("two_lasers_small.map"));
  const int d = 2;
  const double gamma = 0.95;
  AugmentedGraph aug = enumerate_augmented(spec, d, 1000000);
  InducedGraph shaped = apply_shaping(aug.graph, aug.phi, gamma, false);

  std::unordered_map<std::string, int> vertex_of;
  for (size_t v = 0; v < shaped.vertices.size(); ++v)
    vertex_of[shaped.vertices[v]] = static_cast<int>(v);

  AugmentedWorldModel model(spec, d);
  Rng rng(3);
  std::vector<JointAction> actions;
  for (int episode = 0; episode < 30; ++episode) {
    ShapedEnv env(spec, ShapingConfig{d, gamma, false, true});
    env.reset();
    WorldState s = initial_state(spec);
    for (int t = 0; t < 40; ++t) {
      const std::string key =
          augment_key_joint(canonical_key(s), env.counters(), d);
      auto it = vertex_of.find(key);
      REQUIRE(it != vertex_of.end());
      available_actions(spec, s, actions);
      const JointAction a =
          actions[static_cast<size_t>(rng.next_below(actions.size()))];
      ShapedStep o = env.step(s, a, 0);
      bool matched = false;
      for (int e : shaped.out[static_cast<size_t>(it->second)]) {
        if (shaped.edges[static_cast<size_t>(e)].action == a.label()) {
          CHECK(o.shaped_reward ==
                doctest::Approx(shaped.edges[static_cast<size_t>(e)].w)
                    .epsilon(1e-12));
          matched = true;
          break;
        }
      }
      CHECK(matched);
      if (o.base.terminal)
        break;
      s = o.base.next;
    }
  }
}

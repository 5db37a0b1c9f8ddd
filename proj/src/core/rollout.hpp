#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/map_spec.hpp"

namespace zidlab {

struct ExplorationStats {
  std::string map_id;
  int horizon = 0;
  std::uint64_t seed = 0;
  long long total_steps = 0;
  long long episodes = 0;
  long long exits = 0;
  long long deaths = 0;
  long long truncations = 0;
  double exit_rate = 0.0;
};

// Uniform-random exploration: episodes draw uniformly among the available
// joint actions until the step budget is spent; the episode in progress when
// the budget runs out is played to completion. Bit-deterministic per seed.
ExplorationStats random_explore(const MapSpec &spec, int horizon,
                                long long step_budget, std::uint64_t seed,
                                const std::string &map_id = "");

// Exact distribution oracle for random_explore: out[h] is the probability
// that a uniform-random walk from the initial distribution first reaches a
// goal vertex within h steps, for h = 0..max_horizon. Death sinks absorb
// without exiting. Assumes the graph's parallel edges each count once in the
// uniform draw, which is how enumerate_graph builds them.
std::vector<double> exact_exit_probability(const InducedGraph &g,
                                           int max_horizon);

} // namespace zidlab

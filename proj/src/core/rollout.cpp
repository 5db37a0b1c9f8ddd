#include "core/rollout.hpp"

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/world.hpp"

namespace zidlab {

ExplorationStats random_explore(const MapSpec &spec, int horizon,
                                long long step_budget, std::uint64_t seed,
                                const std::string &map_id) {
  if (horizon < 1)
    fail_validation("random_explore: horizon must be >= 1");
  if (step_budget < 1)
    fail_validation("random_explore: step budget must be >= 1");

  ExplorationStats stats;
  stats.map_id = map_id;
  stats.horizon = horizon;
  stats.seed = seed;

  std::vector<JointAction> actions;
  while (stats.total_steps < step_budget) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(stats.episodes)));
    WorldState s = spawn_state(spec, rng);
    for (;;) {
      available_actions(spec, s, actions);
      const JointAction &a =
          actions[static_cast<size_t>(rng.next_below(actions.size()))];
      StepOutcome o = step(spec, s, a, horizon, false);
      ++stats.total_steps;
      if (o.terminal) {
        if (o.next.all_exited())
          ++stats.exits;
        else
          ++stats.deaths;
        break;
      }
      if (o.truncated) {
        ++stats.truncations;
        break;
      }
      s = o.next;
    }
    ++stats.episodes;
  }
  stats.exit_rate = stats.episodes
                        ? static_cast<double>(stats.exits) /
                              static_cast<double>(stats.episodes)
                        : 0.0;
  return stats;
}

std::vector<double> exact_exit_probability(const InducedGraph &g,
                                           int max_horizon) {
  if (max_horizon < 0)
    fail_validation("exact_exit_probability: horizon must be >= 0");
  if (g.initial.empty())
    fail_validation("exact_exit_probability: graph has no initial states");

  std::vector<double> table(static_cast<size_t>(max_horizon) + 1, 0.0);
  std::vector<double> dist(g.vertices.size(), 0.0);
  const double w0 = 1.0 / static_cast<double>(g.initial.size());

  double exited = 0.0;
  for (int v : g.initial) {
    if (g.is_goal[static_cast<size_t>(v)])
      exited += w0;
    else
      dist[static_cast<size_t>(v)] += w0;
  }
  table[0] = exited;

  std::vector<double> next(g.vertices.size(), 0.0);
  for (int t = 1; t <= max_horizon; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (size_t v = 0; v < dist.size(); ++v) {
      const double mass = dist[v];
      if (mass == 0.0)
        continue;
      const auto &out = g.out[v];
      if (out.empty())
        continue; // absorbing non-goal sink (death)
      const double share = mass / static_cast<double>(out.size());
      for (int e : out) {
        const int dst = g.edges[static_cast<size_t>(e)].dst;
        if (g.is_goal[static_cast<size_t>(dst)])
          exited += share;
        else
          next[static_cast<size_t>(dst)] += share;
      }
    }
    dist.swap(next);
    table[static_cast<size_t>(t)] = exited;
  }
  return table;
}

} // namespace zidlab

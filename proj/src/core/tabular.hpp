#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "core/graph.hpp"
#include "core/map_spec.hpp"
#include "core/shaping.hpp"

namespace zidlab {

struct ValueIterationResult {
  std::vector<double> values;
  // Per vertex, the edge indices whose Q is within tie_eps of the maximum.
  std::vector<std::vector<int>> greedy_edges;
  int iterations = 0;
};

// Synchronous Bellman-optimality iteration to sup-norm change < tolerance.
// Sinks have value 0 and an empty greedy set.
ValueIterationResult value_iteration(const InducedGraph &g, double gamma,
                                     double tolerance,
                                     int max_iterations = 200000,
                                     double tie_eps = 1e-9);

struct LearnSchedule {
  long long total_steps = 100000;
  double eps_start = 1.0;
  double eps_end = 0.05;
  long long eps_anneal_steps = 50000;
  double gamma = 0.95;
  double learning_rate = 0.1;
  long long eval_interval = 2500;
  int eval_episodes = 32;
  int horizon = 28;
};

inline double epsilon_at(const LearnSchedule &s, long long step) {
  if (step >= s.eps_anneal_steps)
    return s.eps_end;
  double frac = static_cast<double>(step) /
                static_cast<double>(s.eps_anneal_steps);
  return s.eps_start + frac * (s.eps_end - s.eps_start);
}

// Packs a world state (and optionally the capped crossing counters) into a
// 64-bit key. Fails at construction when the map does not fit.
class StateKeyPacker {
public:
  StateKeyPacker(const MapSpec &spec, bool with_counters, int d);
  std::uint64_t pack(const WorldState &s, const CrossingCounters *c) const;

private:
  int tile_bits_ = 0;
  int counter_bits_ = 0;
  int n_agents_ = 0;
  int n_lasers_ = 0;
  int n_gems_ = 0;
  int d_ = 0;
  int width_ = 0;
  bool with_counters_ = false;
};

// Joint-action Q table: per visited state, one value per available joint
// action (indexed by position in the canonical available-actions order).
using QTable = std::unordered_map<std::uint64_t, std::vector<double>>;

struct CurvePoint {
  long long step = 0;
  double exit_rate = 0.0;
};

struct QLearnResult {
  std::vector<CurvePoint> curve;
  long long states_seen = 0;
  double final_exit_rate = 0.0;
};

// One-step epsilon-greedy tabular Q-learning over joint actions, with
// periodic greedy evaluations. `shaping` switches the reward to the delayed
// PBRS wrapper and augments state keys with the capped counters.
// Deterministic per seed.
QLearnResult q_learning(const MapSpec &spec,
                        const std::optional<ShapingConfig> &shaping,
                        const LearnSchedule &schedule, std::uint64_t seed);

// Fraction of episodes in which all agents exit under the greedy policy
// (ties broken toward the lowest action index; unseen states act greedily on
// the zero table, i.e. take action 0).
double greedy_eval(const QTable &table, const MapSpec &spec,
                   const std::optional<ShapingConfig> &shaping,
                   const StateKeyPacker &packer, int episodes, int horizon,
                   std::uint64_t seed);

} // namespace zidlab

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/map_spec.hpp"
#include "core/world.hpp"

namespace zidlab {

inline constexpr int kMaxShapedLasers = 8;

// Per-(agent, laser) crossing age. -1 means not crossed this episode; once a
// pair crosses, its entry counts the steps elapsed since (0 on the crossing
// step itself) and never resets within the episode.
struct CrossingCounters {
  std::array<std::int16_t, kMaxAgents * kMaxShapedLasers> values{};
  int n_agents = 0;
  int n_lasers = 0;

  static CrossingCounters fresh(int n_agents, int n_lasers);

  std::int16_t &at(int agent, int laser) {
    return values[static_cast<size_t>(agent * kMaxShapedLasers + laser)];
  }
  std::int16_t at(int agent, int laser) const {
    return values[static_cast<size_t>(agent * kMaxShapedLasers + laser)];
  }
  bool operator==(const CrossingCounters &) const = default;
};

// phi(s) = -sum over (agent, laser) of [C_{i,l} <= d]; never-crossed pairs
// (-1) satisfy the condition and keep contributing until crossed and aged
// past d.
double delayed_potential(const CrossingCounters &c, int d);

// Episode-end potential: only never-crossed pairs still count, so every
// crossed-but-unpaid pair releases its pending bonus in the final shaped
// delta and the number of bonus pulses is the same for every d.
double flush_potential(const CrossingCounters &c);

// Ages every crossed entry by one step, then records first crossings at 0.
// Re-crossings of an already-counted pair are ignored.
CrossingCounters update_counters(const CrossingCounters &c,
                                 const std::vector<Crossing> &crossings);

// Appends agent i's counter row, entrywise capped at d+1, to its state key.
std::string augment_observation(const std::string &state_key,
                                const CrossingCounters &c, int agent, int d);

// Joint variant used by the centralized tabular learner: all rows appended.
std::string augment_key_joint(const std::string &state_key,
                              const CrossingCounters &c, int d);

struct ShapingConfig {
  int d = 0;
  double gamma = 0.95;
  bool strict_paper_sign = false; // use the printed r + g*phi(s) - phi(s')
  bool flush_on_truncation = true;
};

struct ShapedStep {
  StepOutcome base;
  double shaped_reward = 0.0;
  double potential_before = 0.0;
  double potential_after = 0.0;
};

// Owns the counters for one episode. reset() at episode start; step() wraps
// the environment step and rewrites the reward with the potential
// difference. Terminal steps always flush; truncation flushes when
// configured.
class ShapedEnv {
public:
  ShapedEnv(const MapSpec &spec, ShapingConfig cfg);

  void reset();
  const CrossingCounters &counters() const { return counters_; }
  const ShapingConfig &config() const { return cfg_; }

  ShapedStep step(const WorldState &s, const JointAction &a, int horizon);

private:
  const MapSpec *spec_;
  ShapingConfig cfg_;
  CrossingCounters counters_;
};

// Environment model over (world state, capped counters); rewards stay
// unshaped. Together with vertex potentials this yields the shaped graph via
// apply_shaping without a second enumeration.
class AugmentedWorldModel {
public:
  struct State {
    WorldState world;
    CrossingCounters counters;
  };
  using Action = JointAction;
  struct Transition {
    State next;
    double reward;
    bool terminal;
    bool goal;
  };

  AugmentedWorldModel(const MapSpec &spec, int d);

  double base_reward() const { return 0.0; }
  std::vector<State> initial_states() const;
  std::string key(const State &s) const;
  void actions(const State &s, std::vector<Action> &out) const;
  Transition apply(const State &s, const Action &a) const;

private:
  const MapSpec *spec_;
  int d_;
};

struct AugmentedGraph {
  InducedGraph graph;                          // unshaped weights
  std::vector<AugmentedWorldModel::State> states; // aligned with vertices
  std::vector<double> phi; // delayed potential; flush value at sinks
};

AugmentedGraph enumerate_augmented(const MapSpec &spec, int d,
                                   long long state_cap);

// Rewrites every edge weight with the potential difference:
// standard sign w + gamma*phi[dst] - phi[src]; strict paper sign
// w + gamma*phi[src] - phi[dst].
InducedGraph apply_shaping(const InducedGraph &g,
                           const std::vector<double> &phi, double gamma,
                           bool strict_paper_sign = false);

} // namespace zidlab

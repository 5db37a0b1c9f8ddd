#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/map_spec.hpp"
#include "core/rng.hpp"

namespace zidlab {

enum class AgentStatus : std::uint8_t { Alive, Exited, Dead };

// Joint state of one episode. Trivially copyable; step_count is not part of
// the canonical identity of a state.
struct WorldState {
  std::array<Pos, kMaxAgents> positions{};
  std::array<AgentStatus, kMaxAgents> status{};
  int n_agents = 0;
  std::uint32_t gems_collected = 0;
  int step_count = 0;

  bool all_exited() const {
    for (int i = 0; i < n_agents; ++i)
      if (status[static_cast<size_t>(i)] != AgentStatus::Exited)
        return false;
    return true;
  }
  bool any_dead() const {
    for (int i = 0; i < n_agents; ++i)
      if (status[static_cast<size_t>(i)] == AgentStatus::Dead)
        return true;
    return false;
  }
  bool is_terminal() const { return any_dead() || all_exited(); }
};

struct JointAction {
  std::array<Move, kMaxAgents> moves{};
  int n_agents = 0;

  bool operator==(const JointAction &) const = default;
  std::string label() const {
    std::string s;
    for (int i = 0; i < n_agents; ++i)
      s.push_back(move_char(moves[static_cast<size_t>(i)]));
    return s;
  }
};

struct Crossing {
  int agent = 0;
  int laser = 0;
  bool operator==(const Crossing &) const = default;
};

struct StepOutcome {
  WorldState next;
  double reward = 0.0;
  bool terminal = false;
  bool truncated = false;
  std::vector<Crossing> crossings; // (agent, laser) pairs newly entered
};

// Initial state with every agent on its start tile.
WorldState initial_state(const MapSpec &spec);

// Uniform collision-free placement over the spawn zone (falls back to the
// start tiles when the map has no spawn zone).
WorldState spawn_state(const MapSpec &spec, Rng &rng);

// Every collision-free ordered placement over the spawn zone; the set S0 of
// a random-spawn map. Singleton for fixed-start maps.
std::vector<WorldState> enumerate_initial_states(const MapSpec &spec);

// Active beam tiles per laser: the static path truncated at the first
// same-color blocking agent (the blocker's tile is included). Agents listed
// in `blockers_mask` bit i participate in blocking.
std::vector<std::vector<Pos>>
compute_beams(const MapSpec &spec, const std::vector<Pos> &positions);

// All legal joint actions from `s`, lexicographic in per-agent move order
// (agent 0 most significant). Empty iff the episode is over. A joint action
// is legal when every per-agent move stays in bounds on a walkable tile, is
// not a disabled edge, and the joint result has no shared target and no
// position swap. Exited and dead agents can only Stay.
void available_actions(const MapSpec &spec, const WorldState &s,
                       std::vector<JointAction> &out);

bool action_available(const MapSpec &spec, const WorldState &s,
                      const JointAction &a);

// Applies `a` to `s`. Moves are simultaneous; beams are recomputed from the
// new positions; any agent standing on an active beam of another color dies
// (reward -1, terminal). Otherwise the reward is +1 per newly collected gem
// plus +1 per agent newly on an exit tile. horizon <= 0 disables truncation.
StepOutcome step(const MapSpec &spec, const WorldState &s,
                 const JointAction &a, int horizon = 0, bool validate = true);

// Canonical serialization: "x,y,F;...|gems-hex" with F in {A,X,D}. Stable
// across runs; step_count excluded.
std::string canonical_key(const WorldState &s);

} // namespace zidlab

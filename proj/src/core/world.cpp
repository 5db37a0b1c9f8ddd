#include "core/world.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

#include "core/error.hpp"

namespace zidlab {

namespace {

// Index of the first blocking agent tile on laser l's static path, or -1.
// Blocking requires an agent of the laser's color that is alive and not
// exited.
int blocker_index(const MapSpec &spec, int laser, const WorldState &s) {
  const auto &path = spec.static_beams[static_cast<size_t>(laser)];
  const int color = spec.lasers[static_cast<size_t>(laser)].color;
  if (color >= s.n_agents)
    return -1;
  if (s.status[static_cast<size_t>(color)] != AgentStatus::Alive)
    return -1;
  const Pos p = s.positions[static_cast<size_t>(color)];
  for (size_t k = 0; k < path.size(); ++k)
    if (path[k] == p)
      return static_cast<int>(k);
  return -1;
}

bool on_active_beam(const MapSpec &spec, int laser, Pos p,
                    const WorldState &s) {
  const auto &path = spec.static_beams[static_cast<size_t>(laser)];
  int blocked_at = blocker_index(spec, laser, s);
  size_t active_len = blocked_at < 0 ? path.size()
                                     : static_cast<size_t>(blocked_at) + 1;
  for (size_t k = 0; k < active_len; ++k)
    if (path[k] == p)
      return true;
  return false;
}

void legal_moves(const MapSpec &spec, const WorldState &s, int agent,
                 std::array<Move, 5> &moves, int &count) {
  count = 0;
  if (s.status[static_cast<size_t>(agent)] != AgentStatus::Alive) {
    moves[0] = Move::Stay;
    count = 1;
    return;
  }
  const Pos p = s.positions[static_cast<size_t>(agent)];
  for (Move m : kAllMoves) {
    if (m != Move::Stay) {
      Pos q = apply_move(p, m);
      if (!spec.walkable(q) || spec.edge_disabled(p, m))
        continue;
    }
    moves[static_cast<size_t>(count++)] = m;
  }
}

bool joint_conflict(const WorldState &s, const std::array<Pos, kMaxAgents> &to) {
  for (int i = 0; i < s.n_agents; ++i)
    for (int j = i + 1; j < s.n_agents; ++j) {
      if (to[static_cast<size_t>(i)] == to[static_cast<size_t>(j)])
        return true;
      // swap
      if (to[static_cast<size_t>(i)] == s.positions[static_cast<size_t>(j)] &&
          to[static_cast<size_t>(j)] == s.positions[static_cast<size_t>(i)])
        return true;
    }
  return false;
}

} // namespace

WorldState initial_state(const MapSpec &spec) {
  WorldState s;
  s.n_agents = spec.n_agents;
  for (int i = 0; i < spec.n_agents; ++i) {
    s.positions[static_cast<size_t>(i)] = spec.starts[static_cast<size_t>(i)];
    s.status[static_cast<size_t>(i)] = AgentStatus::Alive;
  }
  return s;
}

WorldState spawn_state(const MapSpec &spec, Rng &rng) {
  if (!spec.random_spawn())
    return initial_state(spec);
  WorldState s;
  s.n_agents = spec.n_agents;
  std::vector<Pos> zone = spec.spawn_zone;
  for (int i = 0; i < spec.n_agents; ++i) {
    if (zone.empty())
      fail_validation("spawn zone smaller than the number of agents");
    size_t k = static_cast<size_t>(rng.next_below(zone.size()));
    s.positions[static_cast<size_t>(i)] = zone[k];
    s.status[static_cast<size_t>(i)] = AgentStatus::Alive;
    zone.erase(zone.begin() + static_cast<long>(k));
  }
  return s;
}

std::vector<WorldState> enumerate_initial_states(const MapSpec &spec) {
  if (!spec.random_spawn())
    return {initial_state(spec)};
  std::vector<WorldState> out;
  WorldState s;
  s.n_agents = spec.n_agents;
  std::vector<int> pick(static_cast<size_t>(spec.n_agents), -1);
  const int z = static_cast<int>(spec.spawn_zone.size());

  auto place = [&](auto &&self, int agent) -> void {
    if (agent == spec.n_agents) {
      for (int i = 0; i < spec.n_agents; ++i) {
        s.positions[static_cast<size_t>(i)] =
            spec.spawn_zone[static_cast<size_t>(pick[static_cast<size_t>(i)])];
        s.status[static_cast<size_t>(i)] = AgentStatus::Alive;
      }
      out.push_back(s);
      return;
    }
    for (int k = 0; k < z; ++k) {
      bool taken = false;
      for (int j = 0; j < agent; ++j)
        taken |= pick[static_cast<size_t>(j)] == k;
      if (taken)
        continue;
      pick[static_cast<size_t>(agent)] = k;
      self(self, agent + 1);
    }
  };
  place(place, 0);
  if (out.empty())
    fail_validation("spawn zone smaller than the number of agents");
  return out;
}

std::vector<std::vector<Pos>>
compute_beams(const MapSpec &spec, const std::vector<Pos> &positions) {
  WorldState s;
  s.n_agents = static_cast<int>(positions.size());
  for (size_t i = 0; i < positions.size(); ++i) {
    s.positions[i] = positions[i];
    s.status[i] = AgentStatus::Alive;
  }
  std::vector<std::vector<Pos>> beams;
  for (size_t l = 0; l < spec.lasers.size(); ++l) {
    const auto &path = spec.static_beams[l];
    int blocked_at = blocker_index(spec, static_cast<int>(l), s);
    size_t active_len =
        blocked_at < 0 ? path.size() : static_cast<size_t>(blocked_at) + 1;
    beams.emplace_back(path.begin(), path.begin() + static_cast<long>(active_len));
  }
  return beams;
}

void available_actions(const MapSpec &spec, const WorldState &s,
                       std::vector<JointAction> &out) {
  out.clear();
  if (s.is_terminal())
    return;

  std::array<std::array<Move, 5>, kMaxAgents> moves{};
  std::array<int, kMaxAgents> counts{};
  for (int i = 0; i < s.n_agents; ++i)
    legal_moves(spec, s, i, moves[static_cast<size_t>(i)],
                counts[static_cast<size_t>(i)]);

  JointAction a;
  a.n_agents = s.n_agents;
  std::array<Pos, kMaxAgents> to{};
  std::array<int, kMaxAgents> idx{};

  for (;;) {
    for (int i = 0; i < s.n_agents; ++i) {
      Move m = moves[static_cast<size_t>(i)][static_cast<size_t>(
          idx[static_cast<size_t>(i)])];
      a.moves[static_cast<size_t>(i)] = m;
      to[static_cast<size_t>(i)] =
          s.status[static_cast<size_t>(i)] == AgentStatus::Alive
              ? apply_move(s.positions[static_cast<size_t>(i)], m)
              : s.positions[static_cast<size_t>(i)];
    }
    if (!joint_conflict(s, to))
      out.push_back(a);

    // odometer, agent 0 most significant
    int i = s.n_agents - 1;
    while (i >= 0) {
      if (++idx[static_cast<size_t>(i)] < counts[static_cast<size_t>(i)])
        break;
      idx[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0)
      break;
  }
}

bool action_available(const MapSpec &spec, const WorldState &s,
                      const JointAction &a) {
  if (s.is_terminal() || a.n_agents != s.n_agents)
    return false;
  std::array<Pos, kMaxAgents> to{};
  for (int i = 0; i < s.n_agents; ++i) {
    const Move m = a.moves[static_cast<size_t>(i)];
    const Pos p = s.positions[static_cast<size_t>(i)];
    if (s.status[static_cast<size_t>(i)] != AgentStatus::Alive) {
      if (m != Move::Stay)
        return false;
      to[static_cast<size_t>(i)] = p;
      continue;
    }
    if (m != Move::Stay) {
      Pos q = apply_move(p, m);
      if (!spec.walkable(q) || spec.edge_disabled(p, m))
        return false;
      to[static_cast<size_t>(i)] = q;
    } else {
      to[static_cast<size_t>(i)] = p;
    }
  }
  return !joint_conflict(s, to);
}

StepOutcome step(const MapSpec &spec, const WorldState &s,
                 const JointAction &a, int horizon, bool validate) {
  if (validate && !action_available(spec, s, a))
    fail_runtime("ActionUnavailable: joint action '" + a.label() +
                 "' is not legal in this state");

  StepOutcome out;
  out.next = s;
  out.next.step_count = s.step_count + 1;
  WorldState &ns = out.next;

  for (int i = 0; i < s.n_agents; ++i)
    if (s.status[static_cast<size_t>(i)] == AgentStatus::Alive)
      ns.positions[static_cast<size_t>(i)] = apply_move(
          s.positions[static_cast<size_t>(i)], a.moves[static_cast<size_t>(i)]);

  double reward = 0.0;

  for (int i = 0; i < s.n_agents; ++i) {
    if (ns.status[static_cast<size_t>(i)] != AgentStatus::Alive)
      continue;
    const Pos p = ns.positions[static_cast<size_t>(i)];
    const int tile = spec.tile_index(p);
    const int gem = spec.gem_at_tile[static_cast<size_t>(tile)];
    if (gem >= 0 && !(ns.gems_collected & (1u << gem))) {
      ns.gems_collected |= 1u << gem;
      reward += 1.0;
    }
    if (spec.tile(p) == TileKind::Exit) {
      ns.status[static_cast<size_t>(i)] = AgentStatus::Exited;
      reward += 1.0;
    }
  }

  bool any_death = false;
  if (!spec.lasers.empty()) {
    for (int i = 0; i < s.n_agents; ++i) {
      if (ns.status[static_cast<size_t>(i)] != AgentStatus::Alive)
        continue;
      const Pos p = ns.positions[static_cast<size_t>(i)];
      const std::uint16_t mask =
          spec.beam_mask[static_cast<size_t>(spec.tile_index(p))];
      if (!mask)
        continue;
      for (size_t l = 0; l < spec.lasers.size(); ++l) {
        if (!(mask & (1u << l)))
          continue;
        if (spec.lasers[l].color == i)
          continue;
        if (on_active_beam(spec, static_cast<int>(l), p, ns)) {
          ns.status[static_cast<size_t>(i)] = AgentStatus::Dead;
          any_death = true;
          break;
        }
      }
    }
  }

  if (any_death) {
    out.reward = -1.0;
    out.terminal = true;
  } else {
    out.reward = reward;
    out.terminal = ns.all_exited();
  }
  out.truncated = !out.terminal && horizon > 0 && ns.step_count >= horizon;

  // Newly entered beam-path tiles, for surviving agents only.
  if (!spec.lasers.empty()) {
    for (int i = 0; i < s.n_agents; ++i) {
      if (ns.status[static_cast<size_t>(i)] == AgentStatus::Dead)
        continue;
      const std::uint16_t before = spec.beam_mask[static_cast<size_t>(
          spec.tile_index(s.positions[static_cast<size_t>(i)]))];
      const std::uint16_t after = spec.beam_mask[static_cast<size_t>(
          spec.tile_index(ns.positions[static_cast<size_t>(i)]))];
      std::uint16_t newly = static_cast<std::uint16_t>(after & ~before);
      while (newly) {
        int l = std::countr_zero(newly);
        newly = static_cast<std::uint16_t>(newly & (newly - 1));
        out.crossings.push_back(Crossing{i, l});
      }
    }
  }

  return out;
}

std::string canonical_key(const WorldState &s) {
  std::string key;
  key.reserve(static_cast<size_t>(s.n_agents) * 8 + 4);
  for (int i = 0; i < s.n_agents; ++i) {
    if (i)
      key.push_back(';');
    key += std::to_string(s.positions[static_cast<size_t>(i)].x);
    key.push_back(',');
    key += std::to_string(s.positions[static_cast<size_t>(i)].y);
    key.push_back(',');
    switch (s.status[static_cast<size_t>(i)]) {
    case AgentStatus::Alive:
      key.push_back('A');
      break;
    case AgentStatus::Exited:
      key.push_back('X');
      break;
    case AgentStatus::Dead:
      key.push_back('D');
      break;
    }
  }
  key.push_back('|');
  char buf[16];
  std::snprintf(buf, sizeof buf, "%x", s.gems_collected);
  key += buf;
  return key;
}

} // namespace zidlab

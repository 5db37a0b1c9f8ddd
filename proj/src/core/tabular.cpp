#include "core/tabular.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace zidlab {

ValueIterationResult value_iteration(const InducedGraph &g, double gamma,
                                     double tolerance, int max_iterations,
                                     double tie_eps) {
  if (gamma <= 0.0 || gamma >= 1.0)
    fail_validation("value_iteration: gamma must lie in (0, 1)");
  for (const auto &e : g.edges)
    if (!std::isfinite(e.w))
      fail_runtime("NonFinite: graph has a non-finite edge weight");

  const size_t n = g.vertices.size();
  ValueIterationResult result;
  result.values.assign(n, 0.0);
  std::vector<double> next(n, 0.0);

  for (int it = 0; it < max_iterations; ++it) {
    double delta = 0.0;
    for (size_t v = 0; v < n; ++v) {
      const auto &out = g.out[v];
      if (out.empty()) {
        next[v] = 0.0;
        continue;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (int e : out) {
        const auto &edge = g.edges[static_cast<size_t>(e)];
        best = std::max(best,
                        edge.w + gamma * result.values[static_cast<size_t>(
                                     edge.dst)]);
      }
      next[v] = best;
      delta = std::max(delta, std::abs(best - result.values[v]));
    }
    result.values.swap(next);
    result.iterations = it + 1;
    if (delta < tolerance)
      break;
  }

  result.greedy_edges.assign(n, {});
  for (size_t v = 0; v < n; ++v) {
    const auto &out = g.out[v];
    if (out.empty())
      continue;
    double best = -std::numeric_limits<double>::infinity();
    for (int e : out) {
      const auto &edge = g.edges[static_cast<size_t>(e)];
      best = std::max(best, edge.w + gamma * result.values[static_cast<size_t>(
                                   edge.dst)]);
    }
    for (int e : out) {
      const auto &edge = g.edges[static_cast<size_t>(e)];
      double q = edge.w +
                 gamma * result.values[static_cast<size_t>(edge.dst)];
      if (q >= best - tie_eps)
        result.greedy_edges[v].push_back(e);
    }
  }
  return result;
}

StateKeyPacker::StateKeyPacker(const MapSpec &spec, bool with_counters, int d)
    : n_agents_(spec.n_agents),
      n_lasers_(static_cast<int>(spec.lasers.size())),
      n_gems_(static_cast<int>(spec.gems.size())), d_(d), width_(spec.width),
      with_counters_(with_counters) {
  tile_bits_ = std::bit_width(
      static_cast<unsigned>(spec.width * spec.height - 1));
  // counter values live in {-1, 0, .., d+1}: d+3 symbols
  counter_bits_ = std::bit_width(static_cast<unsigned>(d + 2));
  int total = n_agents_ * (tile_bits_ + 2) + n_gems_;
  if (with_counters_)
    total += n_agents_ * n_lasers_ * counter_bits_;
  if (total > 64)
    fail_validation("state key does not fit in 64 bits for this map");
}

std::uint64_t StateKeyPacker::pack(const WorldState &s,
                                   const CrossingCounters *c) const {
  std::uint64_t key = 0;
  int shift = 0;
  auto put = [&](std::uint64_t v, int bits) {
    key |= v << shift;
    shift += bits;
  };
  for (int i = 0; i < n_agents_; ++i) {
    const Pos p = s.positions[static_cast<size_t>(i)];
    put(static_cast<std::uint64_t>(p.y * width_ + p.x), tile_bits_);
    put(static_cast<std::uint64_t>(s.status[static_cast<size_t>(i)]), 2);
  }
  if (n_gems_ > 0)
    put(s.gems_collected, n_gems_);
  if (with_counters_ && c) {
    for (int i = 0; i < n_agents_; ++i)
      for (int l = 0; l < n_lasers_; ++l) {
        int v = std::min<int>(c->at(i, l), d_ + 1) + 1; // 0..d+2
        put(static_cast<std::uint64_t>(v), counter_bits_);
      }
  }
  return key;
}

namespace {

int greedy_index(const std::vector<double> *q, size_t n_actions) {
  if (!q)
    return 0;
  int best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n_actions; ++i) {
    double v = i < q->size() ? (*q)[i] : 0.0;
    if (v > best_v) {
      best_v = v;
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::vector<double> &entry(QTable &table, std::uint64_t key, size_t n_actions) {
  auto &q = table[key];
  if (q.size() < n_actions)
    q.resize(n_actions, 0.0);
  return q;
}

} // namespace

QLearnResult q_learning(const MapSpec &spec,
                        const std::optional<ShapingConfig> &shaping,
                        const LearnSchedule &schedule, std::uint64_t seed) {
  const bool shaped = shaping.has_value();
  StateKeyPacker packer(spec, shaped, shaped ? shaping->d : 0);
  QTable table;
  QLearnResult result;

  ShapedEnv env(spec, shaped ? *shaping : ShapingConfig{});
  Rng rng(derive_seed(seed, 0));
  std::vector<JointAction> actions;

  WorldState s = spawn_state(spec, rng);
  env.reset();
  std::uint64_t s_key = packer.pack(s, shaped ? &env.counters() : nullptr);
  int eval_counter = 0;

  for (long long t = 0; t < schedule.total_steps; ++t) {
    available_actions(spec, s, actions);
    const size_t n_actions = actions.size();
    const double eps = epsilon_at(schedule, t);

    int a_idx;
    if (rng.next_double() < eps) {
      a_idx = static_cast<int>(rng.next_below(n_actions));
    } else {
      auto it = table.find(s_key);
      a_idx = greedy_index(it == table.end() ? nullptr : &it->second,
                           n_actions);
    }

    ShapedStep o = env.step(s, actions[static_cast<size_t>(a_idx)],
                            schedule.horizon);
    const double r = shaped ? o.shaped_reward : o.base.reward;
    const std::uint64_t next_key =
        packer.pack(o.base.next, shaped ? &env.counters() : nullptr);

    double target = r;
    if (!o.base.terminal) {
      // bootstraps through truncation: the time limit is not part of the task
      available_actions(spec, o.base.next, actions);
      auto it = table.find(next_key);
      double best = 0.0;
      if (it != table.end() && !actions.empty()) {
        best = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < actions.size(); ++i) {
          double v = i < it->second.size() ? it->second[i] : 0.0;
          best = std::max(best, v);
        }
      }
      target += schedule.gamma * best;
    }

    auto &q = entry(table, s_key, n_actions);
    q[static_cast<size_t>(a_idx)] +=
        schedule.learning_rate * (target - q[static_cast<size_t>(a_idx)]);

    if (o.base.terminal || o.base.truncated) {
      s = spawn_state(spec, rng);
      env.reset();
      s_key = packer.pack(s, shaped ? &env.counters() : nullptr);
    } else {
      s = o.base.next;
      s_key = next_key;
    }

    if ((t + 1) % schedule.eval_interval == 0 ||
        t + 1 == schedule.total_steps) {
      double rate = greedy_eval(
          table, spec, shaping, packer, schedule.eval_episodes,
          schedule.horizon,
          derive_seed(seed, 0x9e0 + static_cast<std::uint64_t>(eval_counter)));
      ++eval_counter;
      if (!result.curve.empty() && result.curve.back().step == t + 1)
        result.curve.back().exit_rate = rate;
      else
        result.curve.push_back(CurvePoint{t + 1, rate});
    }
  }

  result.states_seen = static_cast<long long>(table.size());
  result.final_exit_rate =
      result.curve.empty() ? 0.0 : result.curve.back().exit_rate;
  return result;
}

double greedy_eval(const QTable &table, const MapSpec &spec,
                   const std::optional<ShapingConfig> &shaping,
                   const StateKeyPacker &packer, int episodes, int horizon,
                   std::uint64_t seed) {
  const bool shaped = shaping.has_value();
  ShapedEnv env(spec, shaped ? *shaping : ShapingConfig{});
  std::vector<JointAction> actions;
  int exits = 0;

  for (int ep = 0; ep < episodes; ++ep) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(ep)));
    WorldState s = spawn_state(spec, rng);
    env.reset();
    for (;;) {
      available_actions(spec, s, actions);
      std::uint64_t key = packer.pack(s, shaped ? &env.counters() : nullptr);
      auto it = table.find(key);
      int a_idx = greedy_index(it == table.end() ? nullptr : &it->second,
                               actions.size());
      ShapedStep o = env.step(s, actions[static_cast<size_t>(a_idx)], horizon);
      if (o.base.terminal) {
        if (o.base.next.all_exited())
          ++exits;
        break;
      }
      if (o.base.truncated)
        break;
      s = o.base.next;
    }
  }
  return episodes ? static_cast<double>(exits) / episodes : 0.0;
}

} // namespace zidlab

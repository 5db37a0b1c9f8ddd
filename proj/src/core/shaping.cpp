#include "core/shaping.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace zidlab {

CrossingCounters CrossingCounters::fresh(int n_agents, int n_lasers) {
  if (n_lasers > kMaxShapedLasers)
    fail_validation("shaping supports at most " +
                    std::to_string(kMaxShapedLasers) + " lasers");
  CrossingCounters c;
  c.n_agents = n_agents;
  c.n_lasers = n_lasers;
  c.values.fill(-1);
  return c;
}

double delayed_potential(const CrossingCounters &c, int d) {
  int pending = 0;
  for (int i = 0; i < c.n_agents; ++i)
    for (int l = 0; l < c.n_lasers; ++l)
      if (c.at(i, l) <= d)
        ++pending;
  return -static_cast<double>(pending);
}

double flush_potential(const CrossingCounters &c) {
  int uncrossed = 0;
  for (int i = 0; i < c.n_agents; ++i)
    for (int l = 0; l < c.n_lasers; ++l)
      if (c.at(i, l) == -1)
        ++uncrossed;
  return -static_cast<double>(uncrossed);
}

CrossingCounters update_counters(const CrossingCounters &c,
                                 const std::vector<Crossing> &crossings) {
  CrossingCounters next = c;
  for (int i = 0; i < c.n_agents; ++i)
    for (int l = 0; l < c.n_lasers; ++l)
      if (next.at(i, l) >= 0)
        ++next.at(i, l);
  for (const Crossing &cr : crossings)
    if (cr.laser < c.n_lasers && next.at(cr.agent, cr.laser) == -1)
      next.at(cr.agent, cr.laser) = 0;
  return next;
}

namespace {

void append_row(std::string &key, const CrossingCounters &c, int agent, int d) {
  for (int l = 0; l < c.n_lasers; ++l) {
    key.push_back(l == 0 ? 'c' : ',');
    int v = std::min<int>(c.at(agent, l), d + 1);
    key += std::to_string(v);
  }
}

} // namespace

std::string augment_observation(const std::string &state_key,
                                const CrossingCounters &c, int agent, int d) {
  std::string key = state_key;
  key.push_back('|');
  append_row(key, c, agent, d);
  return key;
}

std::string augment_key_joint(const std::string &state_key,
                              const CrossingCounters &c, int d) {
  std::string key = state_key;
  for (int i = 0; i < c.n_agents; ++i) {
    key.push_back('|');
    append_row(key, c, i, d);
  }
  return key;
}

ShapedEnv::ShapedEnv(const MapSpec &spec, ShapingConfig cfg)
    : spec_(&spec), cfg_(cfg),
      counters_(CrossingCounters::fresh(spec.n_agents,
                                        static_cast<int>(spec.lasers.size()))) {
  if (cfg_.gamma <= 0.0 || cfg_.gamma > 1.0)
    fail_validation("shaping gamma must lie in (0, 1]");
  if (cfg_.d < 0)
    fail_validation("shaping delay must be >= 0");
}

void ShapedEnv::reset() {
  counters_ =
      CrossingCounters::fresh(spec_->n_agents,
                              static_cast<int>(spec_->lasers.size()));
}

ShapedStep ShapedEnv::step(const WorldState &s, const JointAction &a,
                           int horizon) {
  ShapedStep out;
  out.potential_before = delayed_potential(counters_, cfg_.d);
  out.base = zidlab::step(*spec_, s, a, horizon, false);
  counters_ = update_counters(counters_, out.base.crossings);

  const bool episode_end =
      out.base.terminal || (out.base.truncated && cfg_.flush_on_truncation);
  out.potential_after = episode_end ? flush_potential(counters_)
                                    : delayed_potential(counters_, cfg_.d);

  if (cfg_.strict_paper_sign)
    out.shaped_reward = out.base.reward + cfg_.gamma * out.potential_before -
                        out.potential_after;
  else
    out.shaped_reward = out.base.reward + cfg_.gamma * out.potential_after -
                        out.potential_before;
  return out;
}

AugmentedWorldModel::AugmentedWorldModel(const MapSpec &spec, int d)
    : spec_(&spec), d_(d) {
  if (d < 0)
    fail_validation("shaping delay must be >= 0");
}

std::vector<AugmentedWorldModel::State>
AugmentedWorldModel::initial_states() const {
  std::vector<State> out;
  for (const WorldState &w : enumerate_initial_states(*spec_))
    out.push_back(State{
        w, CrossingCounters::fresh(spec_->n_agents,
                                   static_cast<int>(spec_->lasers.size()))});
  return out;
}

std::string AugmentedWorldModel::key(const State &s) const {
  return augment_key_joint(canonical_key(s.world), s.counters, d_);
}

void AugmentedWorldModel::actions(const State &s,
                                  std::vector<Action> &out) const {
  available_actions(*spec_, s.world, out);
}

AugmentedWorldModel::Transition
AugmentedWorldModel::apply(const State &s, const Action &a) const {
  StepOutcome o = zidlab::step(*spec_, s.world, a, 0, false);
  o.next.step_count = 0;
  State next{o.next, update_counters(s.counters, o.crossings)};
  // cap so the augmented state space stays finite; the potential only
  // distinguishes <= d from > d
  for (int i = 0; i < next.counters.n_agents; ++i)
    for (int l = 0; l < next.counters.n_lasers; ++l)
      next.counters.at(i, l) = std::min<std::int16_t>(
          next.counters.at(i, l), static_cast<std::int16_t>(d_ + 1));
  return Transition{std::move(next), o.reward, o.terminal,
                    o.terminal && o.next.all_exited()};
}

AugmentedGraph enumerate_augmented(const MapSpec &spec, int d,
                                   long long state_cap) {
  AugmentedWorldModel model(spec, d);
  auto enumerated = enumerate_model(model, state_cap);
  AugmentedGraph out;
  out.graph = std::move(enumerated.graph);
  out.states = std::move(enumerated.states);
  out.phi.reserve(out.states.size());
  for (const auto &s : out.states)
    out.phi.push_back(s.world.is_terminal() ? flush_potential(s.counters)
                                            : delayed_potential(s.counters, d));
  return out;
}

InducedGraph apply_shaping(const InducedGraph &g,
                           const std::vector<double> &phi, double gamma,
                           bool strict_paper_sign) {
  if (phi.size() != g.vertices.size())
    fail_validation("apply_shaping: potential vector size mismatch");
  InducedGraph shaped = g;
  for (auto &e : shaped.edges) {
    const double before = phi[static_cast<size_t>(e.src)];
    const double after = phi[static_cast<size_t>(e.dst)];
    e.w += strict_paper_sign ? gamma * before - after : gamma * after - before;
  }
  return shaped;
}

} // namespace zidlab

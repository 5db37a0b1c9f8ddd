#pragma once

#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/error.hpp"
#include "core/map_spec.hpp"
#include "core/world.hpp"

namespace zidlab {

struct GraphEdge {
  int src = 0;
  int dst = 0;
  std::string action;
  double w = 0.0;
};

// Directed weighted graph induced by an environment: vertices are canonical
// state keys, edges are (state, action, state') with the step reward as
// weight. Vertex and edge order is BFS discovery order, so dumps are stable.
struct InducedGraph {
  std::vector<std::string> vertices;
  std::vector<GraphEdge> edges;
  std::vector<int> initial;
  std::vector<int> goals;
  double base_reward = 0.0;

  // derived
  std::vector<std::vector<int>> out; // per-vertex edge indices
  std::vector<bool> is_goal;

  void rebuild_index() {
    out.assign(vertices.size(), {});
    for (size_t e = 0; e < edges.size(); ++e)
      out[static_cast<size_t>(edges[e].src)].push_back(static_cast<int>(e));
    is_goal.assign(vertices.size(), false);
    for (int g : goals)
      is_goal[static_cast<size_t>(g)] = true;
  }

  long long rewarded_edge_count() const {
    long long n = 0;
    for (const auto &e : edges)
      if (e.w > base_reward)
        ++n;
    return n;
  }
};

// |E+| / |E| with E+ the edges rewarded above the base reward.
double reward_density(const InducedGraph &g);
// The same ratio as an exact (numerator, denominator) pair.
std::pair<long long, long long> density_rational(const InducedGraph &g);
// True iff 0 < density < threshold. The threshold is a tool convention
// (default 0.05), not a property of the graph.
bool is_sparse(const InducedGraph &g, double threshold = 0.05);
// True iff some goal vertex is reachable from some initial vertex.
bool has_winning_walk(const InducedGraph &g);

// Breadth-first closure of a model from its initial states. Model supplies:
//   State, Action, initial_states(), key(State), actions(State, out_vec),
//   apply(State, Action) -> {next, reward, terminal, goal}.
template <typename Model> struct Enumerated {
  InducedGraph graph;
  std::vector<typename Model::State> states; // aligned with graph.vertices
};

template <typename Model>
Enumerated<Model> enumerate_model(Model &model, long long state_cap) {
  Enumerated<Model> out;
  InducedGraph &g = out.graph;
  g.base_reward = model.base_reward();

  std::unordered_map<std::string, int> ids;
  std::queue<int> frontier;

  auto intern = [&](const typename Model::State &s) {
    std::string key = model.key(s);
    auto it = ids.find(key);
    if (it != ids.end())
      return it->second;
    int id = static_cast<int>(g.vertices.size());
    if (state_cap > 0 && id >= state_cap)
      fail_runtime("StateCapExceeded: more than " + std::to_string(state_cap) +
                   " states reachable (frontier size " +
                   std::to_string(frontier.size()) + ")");
    ids.emplace(std::move(key), id);
    g.vertices.push_back(model.key(s));
    out.states.push_back(s);
    frontier.push(id);
    return id;
  };

  for (const auto &s : model.initial_states())
    g.initial.push_back(intern(s));

  std::vector<typename Model::Action> actions;
  while (!frontier.empty()) {
    const int id = frontier.front();
    frontier.pop();
    // states vector may reallocate while expanding, take a copy
    const typename Model::State state = out.states[static_cast<size_t>(id)];
    model.actions(state, actions);
    for (const auto &a : actions) {
      auto t = model.apply(state, a);
      int dst = intern(t.next);
      g.edges.push_back(GraphEdge{id, dst, a.label(), t.reward});
      if (t.goal) {
        bool seen = false;
        for (int v : g.goals)
          seen |= v == dst;
        if (!seen)
          g.goals.push_back(dst);
      }
    }
  }

  g.rebuild_index();
  return out;
}

// The plain environment model: states are WorldStates, goals the all-exited
// terminals. Death states are ordinary sink vertices.
class WorldModel {
public:
  using State = WorldState;
  using Action = JointAction;
  struct Transition {
    State next;
    double reward;
    bool terminal;
    bool goal;
  };

  explicit WorldModel(const MapSpec &spec) : spec_(&spec) {}

  double base_reward() const { return 0.0; }
  std::vector<State> initial_states() const {
    return enumerate_initial_states(*spec_);
  }
  std::string key(const State &s) const { return canonical_key(s); }
  void actions(const State &s, std::vector<Action> &out) const {
    available_actions(*spec_, s, out);
  }
  Transition apply(const State &s, const Action &a) const {
    StepOutcome o = step(*spec_, s, a, 0, false);
    o.next.step_count = 0; // states are identified modulo time
    return Transition{o.next, o.reward, o.terminal,
                      o.terminal && o.next.all_exited()};
  }

private:
  const MapSpec *spec_;
};

InducedGraph enumerate_graph(const MapSpec &spec, long long state_cap);
Enumerated<WorldModel> enumerate_world(const MapSpec &spec,
                                       long long state_cap);

} // namespace zidlab

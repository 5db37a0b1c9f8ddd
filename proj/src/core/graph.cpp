#include "core/graph.hpp"

namespace zidlab {

double reward_density(const InducedGraph &g) {
  auto [num, den] = density_rational(g);
  return static_cast<double>(num) / static_cast<double>(den);
}

std::pair<long long, long long> density_rational(const InducedGraph &g) {
  if (g.edges.empty())
    fail_runtime("EmptyGraph: reward density is undefined without edges");
  return {g.rewarded_edge_count(), static_cast<long long>(g.edges.size())};
}

bool is_sparse(const InducedGraph &g, double threshold) {
  if (threshold <= 0.0 || threshold >= 1.0)
    fail_validation("sparsity threshold must lie in (0, 1)");
  double d = reward_density(g);
  return d > 0.0 && d < threshold;
}

bool has_winning_walk(const InducedGraph &g) {
  if (g.goals.empty() || g.initial.empty())
    return false;
  std::vector<bool> seen(g.vertices.size(), false);
  std::vector<int> stack;
  for (int v : g.initial) {
    if (!seen[static_cast<size_t>(v)]) {
      seen[static_cast<size_t>(v)] = true;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (g.is_goal[static_cast<size_t>(v)])
      return true;
    for (int e : g.out[static_cast<size_t>(v)]) {
      int u = g.edges[static_cast<size_t>(e)].dst;
      if (!seen[static_cast<size_t>(u)]) {
        seen[static_cast<size_t>(u)] = true;
        stack.push_back(u);
      }
    }
  }
  return false;
}

InducedGraph enumerate_graph(const MapSpec &spec, long long state_cap) {
  WorldModel model(spec);
  return enumerate_model(model, state_cap).graph;
}

Enumerated<WorldModel> enumerate_world(const MapSpec &spec,
                                       long long state_cap) {
  WorldModel model(spec);
  return enumerate_model(model, state_cap);
}

} // namespace zidlab

// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "core/graph.hpp"

namespace oracles {

// Minimum directed S0-SG cut by brute force over all vertex bipartitions
// with S0 on the source side and SG on the sink side. Returns the minimum
// number of crossing edges. Only for small graphs.
inline int brute_force_min_cut(const zidlab::InducedGraph &g) {
  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> fixed(static_cast<size_t>(n), 0);
  for (int v : g.initial)
    fixed[static_cast<size_t>(v)] = 1;
  for (int v : g.goals)
    fixed[static_cast<size_t>(v)] = 2;
  std::vector<int> free_vertices;
  for (int v = 0; v < n; ++v)
    if (!fixed[static_cast<size_t>(v)])
      free_vertices.push_back(v);

  int best = static_cast<int>(g.edges.size()) + 1;
  std::vector<bool> source_side(static_cast<size_t>(n));
  const std::uint64_t combos = 1ULL << free_vertices.size();
  for (std::uint64_t bits = 0; bits < combos; ++bits) {
    for (int v = 0; v < n; ++v)
      source_side[static_cast<size_t>(v)] = fixed[static_cast<size_t>(v)] == 1;
    for (size_t k = 0; k < free_vertices.size(); ++k)
      if (bits & (1ULL << k))
        source_side[static_cast<size_t>(free_vertices[k])] = true;
    int crossing = 0;
    for (const auto &e : g.edges)
      crossing += source_side[static_cast<size_t>(e.src)] &&
                  !source_side[static_cast<size_t>(e.dst)];
    best = std::min(best, crossing);
  }
  return best;
}

// Reachability after deleting a set of edges.
inline bool winning_walk_without(const zidlab::InducedGraph &g,
                                 const std::vector<int> &deleted) {
  std::vector<bool> dead(g.edges.size(), false);
  for (int e : deleted)
    dead[static_cast<size_t>(e)] = true;
  std::vector<bool> seen(g.vertices.size(), false);
  std::vector<int> stack;
  for (int v : g.initial)
    if (!seen[static_cast<size_t>(v)]) {
      seen[static_cast<size_t>(v)] = true;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (g.is_goal[static_cast<size_t>(v)])
      return true;
    for (int e : g.out[static_cast<size_t>(v)]) {
      if (dead[static_cast<size_t>(e)])
        continue;
      int u = g.edges[static_cast<size_t>(e)].dst;
      if (!seen[static_cast<size_t>(u)]) {
        seen[static_cast<size_t>(u)] = true;
        stack.push_back(u);
      }
    }
  }
  return false;
}

} // namespace oracles

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "core/map_spec.hpp"
#include "core/world.hpp"

namespace zidlab {

struct TransitionRecord {
  WorldState src;
  WorldState dst;
};
using EpisodeRecord = std::vector<TransitionRecord>;

// Undirected unit-weight graph over visited states. An observed transition
// in either direction connects two states; repeats do not change the weight.
struct LocalGraph {
  std::unordered_map<std::string, int> ids;
  std::vector<std::string> keys;
  std::vector<std::array<Pos, kMaxAgents>> positions; // per vertex
  int n_agents = 0;
  std::vector<std::vector<int>> adjacency;
  std::unordered_set<std::uint64_t> edge_set; // packed (lo, hi)

  int intern(const WorldState &s);
  void add_edge(int u, int v);
  static std::uint64_t pack_edge(int u, int v) {
    if (u > v)
      std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }
  size_t size() const { return keys.size(); }
  std::vector<int> largest_component() const;
};

// Inserts every transition of `episode` as vertices plus an undirected unit
// edge (self-transitions are skipped).
void accumulate(LocalGraph &graph, const EpisodeRecord &episode);

struct SpectralResult {
  std::vector<int> component; // vertex ids that were clustered
  std::vector<std::uint8_t> side; // aligned with component; 0 = A, 1 = B
  double lambda2 = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Fiedler bisection of the largest connected component: second-smallest
// eigenvector of the symmetric normalized Laplacian by deflated power
// iteration, split by sign (median split if one side would be empty).
// Returns converged = false when the residual has not reached `tolerance`
// within max_iterations; the partition is then the best iterate's split.
SpectralResult try_spectral_bisect(const LocalGraph &graph,
                                   double tolerance = 1e-8,
                                   int max_iterations = 10000,
                                   std::uint64_t seed = 1);

// Contract-checking variant: fails with TooSmall (< 4 vertices in the
// largest component) or NoConvergence instead of returning a best effort.
SpectralResult spectral_bisect(const LocalGraph &graph,
                               double tolerance = 1e-8,
                               int max_iterations = 10000,
                               std::uint64_t seed = 1);

struct BottleneckScores {
  std::unordered_map<std::uint64_t, long long> edge_scores;
  std::vector<double> vertex_scores; // width x height grid, row-major
};

// Counts every partition-crossing edge once more, then recomputes the grid
// projection: each state's score (sum of its incident edges' scores) is
// added to the cell of every agent in that state.
void score_and_project(const SpectralResult &partition, const LocalGraph &graph,
                       BottleneckScores &scores, const MapSpec &spec);

struct DiscoveryConfig {
  long long total_steps = 100000;
  int cluster_interval_episodes = 5;
  int horizon = 40;
  double tolerance = 1e-8;
  int max_iterations = 10000;
};

struct DiscoveryResult {
  BottleneckScores scores;
  long long total_steps = 0;
  long long episodes = 0;
  int clustering_rounds = 0;
  int unconverged_rounds = 0;
  std::vector<double> cluster_seconds; // one entry per clustering call
  double total_cluster_seconds = 0.0;
  long long graph_vertices = 0;
  long long graph_edges = 0;
};

// Random exploration with a clustering pass every cluster_interval episodes.
// Unconverged spectral rounds still score their best-effort split (and are
// counted); deterministic modulo the timing fields.
DiscoveryResult run_discovery(const MapSpec &spec, const DiscoveryConfig &cfg,
                              std::uint64_t seed);

} // namespace zidlab

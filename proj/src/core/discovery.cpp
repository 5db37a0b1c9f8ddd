#include "core/discovery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace zidlab {

int LocalGraph::intern(const WorldState &s) {
  std::string key = canonical_key(s);
  auto it = ids.find(key);
  if (it != ids.end())
    return it->second;
  int id = static_cast<int>(keys.size());
  keys.push_back(key);
  ids.emplace(std::move(key), id);
  positions.push_back(s.positions);
  n_agents = s.n_agents;
  adjacency.emplace_back();
  return id;
}

void LocalGraph::add_edge(int u, int v) {
  if (u == v)
    return;
  if (!edge_set.insert(pack_edge(u, v)).second)
    return;
  adjacency[static_cast<size_t>(u)].push_back(v);
  adjacency[static_cast<size_t>(v)].push_back(u);
}

std::vector<int> LocalGraph::largest_component() const {
  std::vector<int> comp_of(keys.size(), -1);
  std::vector<int> best;
  std::vector<int> stack;
  int comp = 0;
  for (size_t start = 0; start < keys.size(); ++start) {
    if (comp_of[start] >= 0)
      continue;
    std::vector<int> members;
    stack.push_back(static_cast<int>(start));
    comp_of[start] = comp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int u : adjacency[static_cast<size_t>(v)]) {
        if (comp_of[static_cast<size_t>(u)] < 0) {
          comp_of[static_cast<size_t>(u)] = comp;
          stack.push_back(u);
        }
      }
    }
    if (members.size() > best.size())
      best = std::move(members);
    ++comp;
  }
  std::sort(best.begin(), best.end());
  return best;
}

void accumulate(LocalGraph &graph, const EpisodeRecord &episode) {
  for (const TransitionRecord &t : episode) {
    int u = graph.intern(t.src);
    int v = graph.intern(t.dst);
    graph.add_edge(u, v);
  }
}

namespace {

struct Operator {
  // M = I + D^{-1/2} A D^{-1/2} = 2I - L_sym, restricted to the component.
  const LocalGraph *g;
  const std::vector<int> *comp;
  std::vector<int> local; // vertex id -> component index (-1 outside)
  std::vector<double> inv_sqrt_deg;

  void apply(const std::vector<double> &x, std::vector<double> &y) const {
    const size_t n = comp->size();
    for (size_t i = 0; i < n; ++i) {
      const int v = (*comp)[i];
      double acc = 0.0;
      for (int u : g->adjacency[static_cast<size_t>(v)]) {
        const int j = local[static_cast<size_t>(u)];
        acc += inv_sqrt_deg[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
      }
      y[i] = x[i] + inv_sqrt_deg[i] * acc;
    }
  }
};

double dot(const std::vector<double> &a, const std::vector<double> &b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double> &a) { return std::sqrt(dot(a, a)); }

} // namespace

SpectralResult try_spectral_bisect(const LocalGraph &graph, double tolerance,
                                   int max_iterations, std::uint64_t seed) {
  SpectralResult result;
  result.component = graph.largest_component();
  const size_t n = result.component.size();
  if (n < 4)
    fail_runtime("TooSmall: largest component has " + std::to_string(n) +
                 " vertices, need at least 4");

  Operator op;
  op.g = &graph;
  op.comp = &result.component;
  op.local.assign(graph.size(), -1);
  for (size_t i = 0; i < n; ++i)
    op.local[static_cast<size_t>(result.component[i])] = static_cast<int>(i);
  op.inv_sqrt_deg.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const int v = result.component[i];
    op.inv_sqrt_deg[i] =
        1.0 / std::sqrt(static_cast<double>(
                  graph.adjacency[static_cast<size_t>(v)].size()));
  }

  // known bottom eigenvector of L_sym: D^{1/2} 1
  std::vector<double> v0(n);
  for (size_t i = 0; i < n; ++i)
    v0[i] = 1.0 / op.inv_sqrt_deg[i];
  const double v0n = norm(v0);
  for (auto &x : v0)
    x /= v0n;

  Rng rng(seed);
  std::vector<double> x(n), y(n), lx(n);
  for (auto &e : x)
    e = rng.next_double() - 0.5;

  auto deflate = [&](std::vector<double> &vec) {
    const double c = dot(v0, vec);
    for (size_t i = 0; i < n; ++i)
      vec[i] -= c * v0[i];
  };
  auto normalize = [&](std::vector<double> &vec) {
    double m = norm(vec);
    if (m == 0.0) {
      vec[0] = 1.0;
      m = 1.0;
    }
    for (auto &e : vec)
      e /= m;
  };

  deflate(x);
  normalize(x);

  double lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  int it = 0;
  const int check_every = 16;
  while (it < max_iterations) {
    op.apply(x, y);
    deflate(y);
    normalize(y);
    x.swap(y);
    ++it;
    if (it % check_every == 0 || it == max_iterations) {
      // L_sym x = 2x - Mx
      op.apply(x, y);
      for (size_t i = 0; i < n; ++i)
        lx[i] = 2.0 * x[i] - y[i];
      lambda = dot(x, lx);
      double r = 0.0;
      for (size_t i = 0; i < n; ++i) {
        const double d = lx[i] - lambda * x[i];
        r += d * d;
      }
      residual = std::sqrt(r);
      if (residual < tolerance)
        break;
    }
  }

  result.lambda2 = lambda;
  result.residual = residual;
  result.iterations = it;
  result.converged = residual < tolerance;

  // canonical orientation: first nonzero entry positive
  for (size_t i = 0; i < n; ++i) {
    if (x[i] != 0.0) {
      if (x[i] < 0.0)
        for (auto &e : x)
          e = -e;
      break;
    }
  }

  result.side.assign(n, 0);
  size_t on_b = 0;
  for (size_t i = 0; i < n; ++i) {
    if (x[i] < 0.0) {
      result.side[i] = 1;
      ++on_b;
    }
  }
  if (on_b == 0 || on_b == n) {
    // degenerate sign pattern: median split by eigenvector value
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i)
      order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return x[a] < x[b]; });
    std::fill(result.side.begin(), result.side.end(), 0);
    for (size_t k = 0; k < n / 2; ++k)
      result.side[order[k]] = 1;
  }
  return result;
}

SpectralResult spectral_bisect(const LocalGraph &graph, double tolerance,
                               int max_iterations, std::uint64_t seed) {
  SpectralResult r = try_spectral_bisect(graph, tolerance, max_iterations, seed);
  if (!r.converged)
    fail_runtime("NoConvergence: eigenvector residual " +
                 std::to_string(r.residual) + " after " +
                 std::to_string(r.iterations) + " iterations");
  return r;
}

void score_and_project(const SpectralResult &partition, const LocalGraph &graph,
                       BottleneckScores &scores, const MapSpec &spec) {
  std::vector<int> side_of(graph.size(), -1);
  for (size_t i = 0; i < partition.component.size(); ++i)
    side_of[static_cast<size_t>(partition.component[i])] = partition.side[i];

  for (size_t v = 0; v < graph.size(); ++v) {
    if (side_of[v] < 0)
      continue;
    for (int u : graph.adjacency[v]) {
      if (static_cast<size_t>(u) < v)
        continue; // visit each undirected edge once
      if (side_of[static_cast<size_t>(u)] >= 0 &&
          side_of[static_cast<size_t>(u)] != side_of[v])
        scores.edge_scores[LocalGraph::pack_edge(static_cast<int>(v), u)] += 1;
    }
  }

  scores.vertex_scores.assign(
      static_cast<size_t>(spec.width * spec.height), 0.0);
  for (size_t v = 0; v < graph.size(); ++v) {
    long long state_score = 0;
    for (int u : graph.adjacency[v]) {
      auto it =
          scores.edge_scores.find(LocalGraph::pack_edge(static_cast<int>(v), u));
      if (it != scores.edge_scores.end())
        state_score += it->second;
    }
    if (state_score == 0)
      continue;
    for (int i = 0; i < graph.n_agents; ++i) {
      const Pos p = graph.positions[v][static_cast<size_t>(i)];
      scores.vertex_scores[static_cast<size_t>(spec.tile_index(p))] +=
          static_cast<double>(state_score);
    }
  }
}

DiscoveryResult run_discovery(const MapSpec &spec, const DiscoveryConfig &cfg,
                              std::uint64_t seed) {
  if (cfg.total_steps < 1)
    fail_validation("run_discovery: total_steps must be >= 1");
  if (cfg.cluster_interval_episodes < 1)
    fail_validation("run_discovery: cluster interval must be >= 1");

  DiscoveryResult result;
  LocalGraph graph;
  result.scores.vertex_scores.assign(
      static_cast<size_t>(spec.width * spec.height), 0.0);

  std::vector<JointAction> actions;
  EpisodeRecord episode;

  while (result.total_steps < cfg.total_steps) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(result.episodes)));
    WorldState s = spawn_state(spec, rng);
    episode.clear();
    for (;;) {
      available_actions(spec, s, actions);
      const JointAction &a =
          actions[static_cast<size_t>(rng.next_below(actions.size()))];
      StepOutcome o = step(spec, s, a, cfg.horizon, false);
      ++result.total_steps;
      WorldState recorded = o.next;
      recorded.step_count = 0;
      WorldState src = s;
      src.step_count = 0;
      episode.push_back(TransitionRecord{src, recorded});
      if (o.terminal || o.truncated)
        break;
      s = o.next;
    }
    accumulate(graph, episode);
    ++result.episodes;

    if (result.episodes % cfg.cluster_interval_episodes == 0) {
      const auto t0 = std::chrono::steady_clock::now();
      bool scored = false;
      if (graph.largest_component().size() >= 4) {
        SpectralResult part = try_spectral_bisect(
            graph, cfg.tolerance, cfg.max_iterations,
            derive_seed(seed, 0xC1000000ULL +
                                  static_cast<std::uint64_t>(
                                      result.clustering_rounds)));
        if (!part.converged)
          ++result.unconverged_rounds;
        score_and_project(part, graph, result.scores, spec);
        scored = true;
      }
      const auto t1 = std::chrono::steady_clock::now();
      if (scored) {
        ++result.clustering_rounds;
        const double secs =
            std::chrono::duration<double>(t1 - t0).count();
        result.cluster_seconds.push_back(secs);
        result.total_cluster_seconds += secs;
      }
    }
  }

  result.graph_vertices = static_cast<long long>(graph.size());
  result.graph_edges = static_cast<long long>(graph.edge_set.size());
  return result;
}

} // namespace zidlab

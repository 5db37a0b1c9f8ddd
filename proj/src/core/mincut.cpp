#include "core/mincut.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace zidlab {

namespace {

struct Arc {
  int to;
  int cap;
  int rev; // index of the reverse arc in arcs[to]
};

class Dinic {
public:
  explicit Dinic(int n) : arcs_(static_cast<size_t>(n)) {}

  int add_arc(int from, int to, int cap) {
    arcs_[static_cast<size_t>(from)].push_back(
        Arc{to, cap, static_cast<int>(arcs_[static_cast<size_t>(to)].size())});
    arcs_[static_cast<size_t>(to)].push_back(
        Arc{from, 0,
            static_cast<int>(arcs_[static_cast<size_t>(from)].size()) - 1});
    return static_cast<int>(arcs_[static_cast<size_t>(from)].size()) - 1;
  }

  long long max_flow(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      iter_.assign(arcs_.size(), 0);
      long long f;
      while ((f = dfs(s, t, 1LL << 60)) > 0)
        flow += f;
    }
    return flow;
  }

  // Vertices reachable from s in the residual network (call after max_flow).
  std::vector<bool> residual_reachable(int s) const {
    std::vector<bool> seen(arcs_.size(), false);
    std::vector<int> stack{s};
    seen[static_cast<size_t>(s)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const Arc &a : arcs_[static_cast<size_t>(v)]) {
        if (a.cap > 0 && !seen[static_cast<size_t>(a.to)]) {
          seen[static_cast<size_t>(a.to)] = true;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

private:
  bool bfs(int s, int t) {
    level_.assign(arcs_.size(), -1);
    std::queue<int> q;
    level_[static_cast<size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Arc &a : arcs_[static_cast<size_t>(v)]) {
        if (a.cap > 0 && level_[static_cast<size_t>(a.to)] < 0) {
          level_[static_cast<size_t>(a.to)] = level_[static_cast<size_t>(v)] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[static_cast<size_t>(t)] >= 0;
  }

  long long dfs(int v, int t, long long limit) {
    if (v == t)
      return limit;
    for (int &i = iter_[static_cast<size_t>(v)];
         i < static_cast<int>(arcs_[static_cast<size_t>(v)].size()); ++i) {
      Arc &a = arcs_[static_cast<size_t>(v)][static_cast<size_t>(i)];
      if (a.cap <= 0 ||
          level_[static_cast<size_t>(a.to)] != level_[static_cast<size_t>(v)] + 1)
        continue;
      long long d =
          dfs(a.to, t, std::min(limit, static_cast<long long>(a.cap)));
      if (d > 0) {
        a.cap -= static_cast<int>(d);
        arcs_[static_cast<size_t>(a.to)][static_cast<size_t>(a.rev)].cap +=
            static_cast<int>(d);
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> arcs_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

void check_cut_preconditions(const InducedGraph &g) {
  if (g.initial.empty())
    fail_runtime("min cut: graph has no initial states");
  if (g.goals.empty())
    fail_runtime("NoWinningWalk: graph has no goal states");
  for (int v : g.initial)
    if (g.is_goal[static_cast<size_t>(v)])
      fail_runtime("min cut: an initial state is already a goal state");
  if (!has_winning_walk(g))
    fail_runtime("NoWinningWalk: no goal state is reachable from the initial "
                 "states");
}

} // namespace

CutReport min_cut_ssb(const InducedGraph &g) {
  check_cut_preconditions(g);

  const int n = static_cast<int>(g.vertices.size());
  const int src = n;
  const int sink = n + 1;
  const int inf = static_cast<int>(g.edges.size()) + 1;

  Dinic dinic(n + 2);
  for (const auto &e : g.edges)
    dinic.add_arc(e.src, e.dst, 1);
  for (int v : g.initial)
    dinic.add_arc(src, v, inf);
  for (int v : g.goals)
    dinic.add_arc(v, sink, inf);

  const long long flow = dinic.max_flow(src, sink);
  const std::vector<bool> side = dinic.residual_reachable(src);

  CutReport report;
  for (int v = 0; v < n; ++v)
    if (side[static_cast<size_t>(v)])
      report.source_side.push_back(v);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (side[static_cast<size_t>(g.edges[e].src)] &&
        !side[static_cast<size_t>(g.edges[e].dst)])
      report.cut_edges.push_back(static_cast<int>(e));
  }
  report.cut_size = static_cast<int>(report.cut_edges.size());
  if (report.cut_size != flow)
    fail_runtime("min cut: residual cut size " +
                 std::to_string(report.cut_size) + " != flow " +
                 std::to_string(flow));

  report.max_cut_weight = g.base_reward;
  for (int e : report.cut_edges)
    report.max_cut_weight =
        std::max(report.max_cut_weight, g.edges[static_cast<size_t>(e)].w);
  report.is_zid = report.max_cut_weight <= g.base_reward;
  return report;
}

std::vector<std::vector<int>> enumerate_min_cuts(const InducedGraph &g,
                                                 int max_vertices) {
  check_cut_preconditions(g);

  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> fixed(static_cast<size_t>(n), 0); // 1 source, 2 sink
  for (int v : g.initial)
    fixed[static_cast<size_t>(v)] = 1;
  for (int v : g.goals)
    fixed[static_cast<size_t>(v)] = 2;

  std::vector<int> free_vertices;
  for (int v = 0; v < n; ++v)
    if (!fixed[static_cast<size_t>(v)])
      free_vertices.push_back(v);
  if (static_cast<int>(free_vertices.size()) > max_vertices)
    fail_validation("enumerate_min_cuts: " +
                    std::to_string(free_vertices.size()) +
                    " free vertices exceed the budget of " +
                    std::to_string(max_vertices));

  size_t best = g.edges.size() + 1;
  std::set<std::vector<int>> cuts;
  std::vector<bool> in_source(static_cast<size_t>(n));
  const std::uint64_t combos = 1ULL << free_vertices.size();
  for (std::uint64_t bits = 0; bits < combos; ++bits) {
    for (int v = 0; v < n; ++v)
      in_source[static_cast<size_t>(v)] = fixed[static_cast<size_t>(v)] == 1;
    for (size_t k = 0; k < free_vertices.size(); ++k)
      if (bits & (1ULL << k))
        in_source[static_cast<size_t>(free_vertices[k])] = true;

    std::vector<int> crossing;
    for (size_t e = 0; e < g.edges.size(); ++e)
      if (in_source[static_cast<size_t>(g.edges[e].src)] &&
          !in_source[static_cast<size_t>(g.edges[e].dst)])
        crossing.push_back(static_cast<int>(e));

    if (crossing.size() < best) {
      best = crossing.size();
      cuts.clear();
      cuts.insert(crossing);
    } else if (crossing.size() == best) {
      cuts.insert(crossing);
    }
  }
  return {cuts.begin(), cuts.end()};
}

IncentiveReport classify_incentive(const InducedGraph &g, const CutReport &cut,
                                   const std::vector<Trace> &traces) {
  IncentiveReport report;
  if (cut.is_zid) {
    report.classification = "zero_incentive";
    return report;
  }

  std::unordered_set<std::string> cut_keys;
  for (int e : cut.cut_edges) {
    const auto &edge = g.edges[static_cast<size_t>(e)];
    cut_keys.insert(g.vertices[static_cast<size_t>(edge.src)] + "\x1f" +
                    edge.action);
  }

  double total = 0.0;
  for (const Trace &trace : traces) {
    for (size_t t = 0; t < trace.size(); ++t) {
      if (!cut_keys.contains(trace[t].src + "\x1f" + trace[t].action))
        continue;
      for (size_t u = t; u < trace.size(); ++u) {
        if (trace[u].reward > g.base_reward) {
          int delay = static_cast<int>(u - t);
          report.delay_histogram[delay] += 1;
          total += delay;
          report.traversals += 1;
          break;
        }
      }
    }
  }

  if (report.traversals == 0)
    fail_runtime("InsufficientTraces: no trace traverses a cut edge and "
                 "collects a reward");
  report.mean_delay = total / static_cast<double>(report.traversals);
  report.classification =
      report.delay_histogram.size() == 1 && report.delay_histogram.contains(0)
          ? "immediate"
          : "delayed";
  return report;
}

} // namespace zidlab

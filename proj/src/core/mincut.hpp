#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/graph.hpp"

namespace zidlab {

// A minimum directed S0-SG cut-set: cutting `cut_edges` disconnects every
// initial vertex from every goal vertex, and no smaller edge set does.
// `source_side` is the canonical residual-reachability side. The cut has
// zero-incentive dynamics when no cut edge pays more than the base reward.
struct CutReport {
  std::vector<int> cut_edges; // indices into graph.edges
  int cut_size = 0;
  std::vector<int> source_side;
  bool is_zid = false;
  double max_cut_weight = 0.0;
};

// Unit-capacity max-flow (Dinic) between a super-source over S0 and a
// super-sink over SG; the returned cut is the residual source-side cut.
// Fails with NoWinningWalk when no goal is reachable.
CutReport min_cut_ssb(const InducedGraph &g);

// Exhaustive mode: every distinct minimum cut-set, by brute force over
// vertex bipartitions. Only for graphs with at most `max_vertices` free
// vertices (default 20).
std::vector<std::vector<int>> enumerate_min_cuts(const InducedGraph &g,
                                                 int max_vertices = 20);

struct TraceStep {
  std::string src;
  std::string action;
  double reward = 0.0;
};
using Trace = std::vector<TraceStep>;

// Incentive structure of a cut as observed along traces: "zero_incentive"
// when the cut itself is ZID, otherwise "immediate"/"delayed" according to
// the offset between traversing a cut edge and the first reward above the
// base reward (0 = the traversal step itself).
struct IncentiveReport {
  std::string classification; // zero_incentive | immediate | delayed
  std::map<int, long long> delay_histogram;
  double mean_delay = 0.0;
  long long traversals = 0;
};

IncentiveReport classify_incentive(const InducedGraph &g, const CutReport &cut,
                                   const std::vector<Trace> &traces);

} // namespace zidlab

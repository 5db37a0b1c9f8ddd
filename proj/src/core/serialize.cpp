#include "core/serialize.hpp"

#include "core/error.hpp"

namespace zidlab {

Json graph_to_json(const InducedGraph &g) {
  Json edges = Json::array();
  for (const auto &e : g.edges)
    edges.push_back(
        Json{{"src", e.src}, {"action", e.action}, {"dst", e.dst}, {"w", e.w}});
  return Json{{"vertices", g.vertices},
              {"edges", std::move(edges)},
              {"initial", g.initial},
              {"goals", g.goals},
              {"base_reward", g.base_reward}};
}

InducedGraph graph_from_json(const Json &j) {
  InducedGraph g;
  try {
    g.vertices = j.at("vertices").get<std::vector<std::string>>();
    for (const auto &e : j.at("edges")) {
      GraphEdge edge;
      edge.src = e.at("src").get<int>();
      edge.dst = e.at("dst").get<int>();
      edge.action = e.at("action").get<std::string>();
      edge.w = e.at("w").get<double>();
      g.edges.push_back(std::move(edge));
    }
    g.initial = j.at("initial").get<std::vector<int>>();
    g.goals = j.at("goals").get<std::vector<int>>();
    g.base_reward = j.at("base_reward").get<double>();
  } catch (const Json::exception &e) {
    fail_validation(std::string("bad graph json: ") + e.what());
  }
  const int n = static_cast<int>(g.vertices.size());
  auto check = [&](int v, const char *what) {
    if (v < 0 || v >= n)
      fail_validation(std::string("graph json: ") + what +
                      " index out of range");
  };
  for (const auto &e : g.edges) {
    check(e.src, "edge src");
    check(e.dst, "edge dst");
  }
  for (int v : g.initial)
    check(v, "initial");
  for (int v : g.goals)
    check(v, "goal");
  g.rebuild_index();
  for (int v : g.goals)
    if (!g.out[static_cast<size_t>(v)].empty())
      fail_validation("graph json: goal vertex has outgoing edges");
  return g;
}

Json cut_to_json(const CutReport &cut, const InducedGraph &g) {
  Json edges = Json::array();
  for (int e : cut.cut_edges) {
    const auto &edge = g.edges[static_cast<size_t>(e)];
    edges.push_back(Json{{"src", edge.src},
                         {"action", edge.action},
                         {"dst", edge.dst},
                         {"w", edge.w}});
  }
  return Json{{"cut_size", cut.cut_size},
              {"cut_edges", std::move(edges)},
              {"source_side_size", cut.source_side.size()},
              {"is_zid", cut.is_zid},
              {"max_cut_weight", cut.max_cut_weight}};
}

Json incentive_to_json(const IncentiveReport &r) {
  Json hist = Json::object();
  for (const auto &[delay, count] : r.delay_histogram)
    hist[std::to_string(delay)] = count;
  return Json{{"classification", r.classification},
              {"delay_histogram", std::move(hist)},
              {"mean_delay", r.mean_delay},
              {"traversals", r.traversals}};
}

Json map_info_json(const MapSpec &spec) {
  Json lasers = Json::array();
  for (const auto &l : spec.lasers)
    lasers.push_back(Json{{"x", l.pos.x},
                          {"y", l.pos.y},
                          {"color", l.color},
                          {"dir", std::string(1, move_char(l.dir))}});
  return Json{{"width", spec.width},
              {"height", spec.height},
              {"n_agents", spec.n_agents},
              {"n_exits", spec.exits.size()},
              {"n_gems", spec.gems.size()},
              {"lasers", std::move(lasers)},
              {"spawn_zone_size", spec.spawn_zone.size()},
              {"disabled_edges", spec.disabled_edges.size()}};
}

Json analyze_graph_json(const InducedGraph &g) {
  auto [num, den] = density_rational(g);
  Json out{{"vertices", g.vertices.size()},
           {"edges", g.edges.size()},
           {"rewarded_edges", num},
           {"density", reward_density(g)},
           {"density_rational", std::to_string(num) + "/" + std::to_string(den)},
           {"sparse_at_0.05", is_sparse(g, 0.05)},
           {"base_reward", g.base_reward},
           {"has_winning_walk", has_winning_walk(g)},
           {"initial_states", g.initial.size()},
           {"goal_states", g.goals.size()}};
  if (has_winning_walk(g)) {
    CutReport cut = min_cut_ssb(g);
    out["min_cut"] = cut_to_json(cut, g);
  }
  return out;
}

} // namespace zidlab

#include "zidlab.h"

#include <cstring>
#include <string>

#include "core/error.hpp"
#include "core/experiments.hpp"
#include "core/graph.hpp"
#include "core/map_spec.hpp"
#include "core/mincut.hpp"
#include "core/rollout.hpp"
#include "core/serialize.hpp"

struct zid_map {
  zidlab::MapSpec spec;
};

struct zid_graph {
  zidlab::InducedGraph graph;
};

namespace {

thread_local std::string g_last_error;

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out)
    std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn> int guarded(Fn &&fn) {
  try {
    fn();
    g_last_error.clear();
    return ZID_OK;
  } catch (const zidlab::ZidError &e) {
    g_last_error = e.what();
    return e.kind() == zidlab::ErrorKind::Validation ? ZID_ERR_VALIDATION
                                                     : ZID_ERR_RUNTIME;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return ZID_ERR_RUNTIME;
  } catch (...) {
    g_last_error = "unknown error";
    return ZID_ERR_RUNTIME;
  }
}

int require(bool ok, const char *msg) {
  if (!ok) {
    g_last_error = msg;
    return ZID_ERR_VALIDATION;
  }
  return ZID_OK;
}

zidlab::Json parse_config(const char *config_json) {
  if (!config_json || !*config_json)
    return zidlab::Json::object();
  zidlab::Json j = zidlab::Json::parse(config_json, nullptr, false);
  if (j.is_discarded())
    zidlab::fail_validation("config is not valid json");
  return j;
}

} // namespace

extern "C" {

const char *zid_version(void) { return zidlab::kToolVersion; }

const char *zid_last_error(void) { return g_last_error.c_str(); }

void zid_string_free(char *s) { std::free(s); }

int zid_map_parse_text(const char *text, zid_map **out) {
  if (int rc = require(text && out, "null argument"))
    return rc;
  return guarded([&] { *out = new zid_map{zidlab::parse_map(text)}; });
}

int zid_map_parse_file(const char *path, zid_map **out) {
  if (int rc = require(path && out, "null argument"))
    return rc;
  return guarded([&] { *out = new zid_map{zidlab::parse_map_file(path)}; });
}

int zid_map_restrict_agents(const zid_map *map, int n_agents, zid_map **out) {
  if (int rc = require(map && out, "null argument"))
    return rc;
  return guarded(
      [&] { *out = new zid_map{zidlab::restrict_agents(map->spec, n_agents)}; });
}

int zid_map_info_json(const zid_map *map, char **out_json) {
  if (int rc = require(map && out_json, "null argument"))
    return rc;
  return guarded(
      [&] { *out_json = dup_string(zidlab::map_info_json(map->spec).dump()); });
}

void zid_map_free(zid_map *map) { delete map; }

int zid_graph_enumerate(const zid_map *map, long long state_cap,
                        zid_graph **out) {
  if (int rc = require(map && out, "null argument"))
    return rc;
  return guarded([&] {
    *out = new zid_graph{zidlab::enumerate_graph(map->spec, state_cap)};
  });
}

int zid_graph_to_json(const zid_graph *g, char **out_json) {
  if (int rc = require(g && out_json, "null argument"))
    return rc;
  return guarded(
      [&] { *out_json = dup_string(zidlab::graph_to_json(g->graph).dump()); });
}

int zid_graph_from_json(const char *json_text, zid_graph **out) {
  if (int rc = require(json_text && out, "null argument"))
    return rc;
  return guarded([&] {
    zidlab::Json j = zidlab::Json::parse(json_text, nullptr, false);
    if (j.is_discarded())
      zidlab::fail_validation("graph json does not parse");
    *out = new zid_graph{zidlab::graph_from_json(j)};
  });
}

int zid_graph_stats_json(const zid_graph *g, char **out_json) {
  if (int rc = require(g && out_json, "null argument"))
    return rc;
  return guarded([&] {
    auto [num, den] = zidlab::density_rational(g->graph);
    zidlab::Json j{{"vertices", g->graph.vertices.size()},
                   {"edges", g->graph.edges.size()},
                   {"rewarded_edges", num},
                   {"density", zidlab::reward_density(g->graph)},
                   {"density_rational",
                    std::to_string(num) + "/" + std::to_string(den)},
                   {"base_reward", g->graph.base_reward},
                   {"has_winning_walk", zidlab::has_winning_walk(g->graph)}};
    *out_json = dup_string(j.dump());
  });
}

int zid_graph_has_winning_walk(const zid_graph *g, int *out_flag) {
  if (int rc = require(g && out_flag, "null argument"))
    return rc;
  return guarded(
      [&] { *out_flag = zidlab::has_winning_walk(g->graph) ? 1 : 0; });
}

int zid_graph_min_cut_json(const zid_graph *g, char **out_json) {
  if (int rc = require(g && out_json, "null argument"))
    return rc;
  return guarded([&] {
    zidlab::CutReport cut = zidlab::min_cut_ssb(g->graph);
    *out_json = dup_string(zidlab::cut_to_json(cut, g->graph).dump());
  });
}

int zid_graph_exit_probability_json(const zid_graph *g, int max_horizon,
                                    char **out_json) {
  if (int rc = require(g && out_json, "null argument"))
    return rc;
  return guarded([&] {
    auto table = zidlab::exact_exit_probability(g->graph, max_horizon);
    *out_json = dup_string(zidlab::Json{{"exit_probability", table}}.dump());
  });
}

void zid_graph_free(zid_graph *g) { delete g; }

int zid_analyze(const zid_map *map, const char *config_json,
                char **report_json) {
  if (int rc = require(map && report_json, "null argument"))
    return rc;
  return guarded([&] {
    zidlab::Json cfg = parse_config(config_json);
    const long long cap = cfg.value("state_cap", 1000000LL);
    const int shaped_d = cfg.value("shaped_d", -1);
    const double shaped_gamma = cfg.value("shaped_gamma", 1.0);
    *report_json = dup_string(
        zidlab::analyze_map(map->spec, cap, shaped_d, shaped_gamma).dump(2));
  });
}

int zid_run_explore(const zid_map *map, const char *config_json,
                    char **report_json) {
  if (int rc = require(map && report_json, "null argument"))
    return rc;
  return guarded([&] {
    zidlab::Json report =
        zidlab::run_explore(map->spec, parse_config(config_json));
    *report_json = dup_string(report.dump(2));
  });
}

int zid_run_density_experiment(const char *config_json, const char *out_dir,
                               char **report_json) {
  if (int rc = require(config_json && out_dir && report_json, "null argument"))
    return rc;
  return guarded([&] {
    zidlab::Json report =
        zidlab::run_density_experiment(parse_config(config_json), out_dir);
    *report_json = dup_string(report.dump(2));
  });
}

int zid_run_delay_experiment(const char *config_json, const char *out_dir,
                             char **report_json) {
  if (int rc = require(config_json && out_dir && report_json, "null argument"))
    return rc;
  return guarded([&] {
    zidlab::Json report =
        zidlab::run_delay_experiment(parse_config(config_json), out_dir);
    *report_json = dup_string(report.dump(2));
  });
}

int zid_run_discovery(const char *config_json, const char *out_dir,
                      char **report_json) {
  if (int rc = require(config_json && out_dir && report_json, "null argument"))
    return rc;
  return guarded([&] {
    zidlab::Json report =
        zidlab::run_discovery_experiment(parse_config(config_json), out_dir);
    *report_json = dup_string(report.dump(2));
  });
}

} // extern "C"

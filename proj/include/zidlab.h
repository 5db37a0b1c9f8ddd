/* zidlab C API.
 *
 * Opaque-handle interface to the zidlab core: grid-world maps, induced
 * transition graphs, reward-density / bottleneck analysis, and the seeded
 * experiment runners. All functions return ZID_OK on success or an error
 * code; the message for the most recent failure on the calling thread is
 * available via zid_last_error().
 *
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with zid_string_free().
 */
#ifndef ZIDLAB_H
#define ZIDLAB_H

#ifdef __cplusplus
extern "C" {
#endif

#define ZID_OK 0
#define ZID_ERR_VALIDATION 1 /* bad input: map text, config json, arguments */
#define ZID_ERR_RUNTIME 2    /* state-cap exceeded, no winning walk, io, ... */

typedef struct zid_map zid_map;
typedef struct zid_graph zid_graph;

const char *zid_version(void);

/* Message for the last failing call on this thread ("" if none). */
const char *zid_last_error(void);

void zid_string_free(char *s);

/* ---- maps ---- */

int zid_map_parse_text(const char *text, zid_map **out);
int zid_map_parse_file(const char *path, zid_map **out);
/* Keep only the first n_agents start tiles (the rest become floor). */
int zid_map_restrict_agents(const zid_map *map, int n_agents, zid_map **out);
int zid_map_info_json(const zid_map *map, char **out_json);
void zid_map_free(zid_map *map);

/* ---- induced graphs ---- */

int zid_graph_enumerate(const zid_map *map, long long state_cap,
                        zid_graph **out);
int zid_graph_to_json(const zid_graph *g, char **out_json);
int zid_graph_from_json(const char *json_text, zid_graph **out);
/* {vertices, edges, rewarded_edges, density, density_rational, ...} */
int zid_graph_stats_json(const zid_graph *g, char **out_json);
int zid_graph_has_winning_walk(const zid_graph *g, int *out_flag);
/* Minimum directed S0-SG cut-set plus its zero-incentive classification. */
int zid_graph_min_cut_json(const zid_graph *g, char **out_json);
/* Cumulative probability that a uniform-random walk exits within h steps,
 * for h = 0..max_horizon. */
int zid_graph_exit_probability_json(const zid_graph *g, int max_horizon,
                                    char **out_json);
void zid_graph_free(zid_graph *g);

/* ---- analysis & experiments ----
 *
 * Each runner takes a JSON config (see README for the schema), writes its
 * CSV/JSON/SVG artifacts into out_dir and returns a JSON report. Configs
 * are echoed into every output file for provenance.
 */

/* config: {"state_cap": N, "shaped_d": -1, "shaped_gamma": 1.0}; shaped_d
 * >= 0 analyzes the counter-augmented graph under the delayed potential. */
int zid_analyze(const zid_map *map, const char *config_json,
                char **report_json);
int zid_run_explore(const zid_map *map, const char *config_json,
                    char **report_json);
int zid_run_density_experiment(const char *config_json, const char *out_dir,
                               char **report_json);
int zid_run_delay_experiment(const char *config_json, const char *out_dir,
                             char **report_json);
int zid_run_discovery(const char *config_json, const char *out_dir,
                      char **report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ZIDLAB_H */

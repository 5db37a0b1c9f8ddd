#pragma once

#include <string>

#include "core/map_spec.hpp"
#include "core/serialize.hpp"

namespace zidlab {

inline constexpr const char *kToolVersion = "0.1.0";

// Full analysis of one map: graph size, exact density, minimum cut and its
// zero-incentive classification. `shaped_d` >= 0 analyzes the graph of the
// counter-augmented environment with the delayed potential applied at
// `shaped_gamma` instead of the plain one.
Json analyze_map(const MapSpec &spec, long long state_cap, int shaped_d = -1,
                 double shaped_gamma = 1.0);

// config: {horizon, step_budget, seed}
Json run_explore(const MapSpec &spec, const Json &config);

// config: {maps:[..], horizons:[..], step_budget, seeds:[..], oracle_only,
//          mc_runs_per_cell, formats:[..], threads, state_cap}
// Writes density_runs.csv, density_oracle.csv, density_exit_rate.svg and
// report.json into out_dir.
Json run_density_experiment(const Json &config, const std::string &out_dir);

// config: {map, conditions:[-1,0..4], seeds:[..], total_steps,
//          eps_anneal_steps, gamma, learning_rate, eval_interval,
//          eval_episodes, horizon, strict_paper_sign, flush_on_truncation,
//          formats, threads}
// Writes delay_curves.csv, delay_curves.svg and report.json (with the
// Welch and Spearman summaries) into out_dir.
Json run_delay_experiment(const Json &config, const std::string &out_dir);

// config: {map, agents:[..], runs, seed, total_steps, cluster_interval,
//          horizon, formats}
// Writes heatmap_<n>agents.{csv,svg}, discovery_timing.csv,
// discovery_timing.svg and report.json into out_dir. Runs sequentially so
// the timing comparison is fair.
Json run_discovery_experiment(const Json &config, const std::string &out_dir);

} // namespace zidlab

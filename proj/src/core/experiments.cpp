#include "core/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <set>

#include "core/csv.hpp"
#include "core/discovery.hpp"
#include "core/error.hpp"
#include "core/rollout.hpp"
#include "core/runner.hpp"
#include "core/shaping.hpp"
#include "core/stats.hpp"
#include "core/svg.hpp"
#include "core/tabular.hpp"

namespace zidlab {

namespace {

template <typename T> T get_or(const Json &j, const char *key, T fallback) {
  if (!j.contains(key))
    return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception &e) {
    fail_validation(std::string("config field '") + key + "': " + e.what());
  }
}

std::vector<std::uint64_t> parse_seeds(const Json &config) {
  std::vector<std::uint64_t> seeds;
  if (config.contains("seeds")) {
    const Json &s = config.at("seeds");
    if (s.is_array()) {
      for (const auto &v : s)
        seeds.push_back(v.get<std::uint64_t>());
    } else if (s.is_object()) {
      const auto first = s.at("first").get<std::uint64_t>();
      const auto count = s.at("count").get<std::uint64_t>();
      for (std::uint64_t i = 0; i < count; ++i)
        seeds.push_back(first + i);
    } else {
      fail_validation("config 'seeds' must be an array or {first, count}");
    }
  }
  if (seeds.empty())
    fail_validation("config needs a non-empty 'seeds' list");
  return seeds;
}

std::set<std::string> parse_formats(const Json &config) {
  std::set<std::string> out;
  for (const auto &f :
       get_or<std::vector<std::string>>(config, "formats",
                                        {"csv", "json", "svg"})) {
    if (f != "csv" && f != "json" && f != "svg")
      fail_validation("unknown format '" + f + "' (csv, json or svg)");
    out.insert(f);
  }
  return out;
}

std::string stem_of(const std::string &path) {
  return std::filesystem::path(path).stem().string();
}

std::string join_path(const std::string &dir, const std::string &name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_svg(const std::string &path, const std::string &config_line,
               const std::string &svg) {
  write_text_file(path, "<!-- config: " + config_line + " -->\n" + svg);
}

double elapsed_s(const std::chrono::steady_clock::time_point &t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string condition_label(int d) {
  return d < 0 ? "none" : "d=" + std::to_string(d);
}

} // namespace

Json analyze_map(const MapSpec &spec, long long state_cap, int shaped_d,
                 double shaped_gamma) {
  InducedGraph graph;
  if (shaped_d >= 0) {
    AugmentedGraph aug = enumerate_augmented(spec, shaped_d, state_cap);
    graph = apply_shaping(aug.graph, aug.phi, shaped_gamma);
  } else {
    graph = enumerate_graph(spec, state_cap);
  }
  if (!has_winning_walk(graph))
    fail_runtime("NoWinningWalk: no goal state is reachable from the initial "
                 "states of this map");
  Json out = analyze_graph_json(graph);
  out["map"] = map_info_json(spec);
  if (shaped_d >= 0) {
    out["shaped_d"] = shaped_d;
    out["shaped_gamma"] = shaped_gamma;
  }
  out["tool_version"] = kToolVersion;
  return out;
}

Json run_explore(const MapSpec &spec, const Json &config) {
  const int horizon = get_or<int>(config, "horizon", 12);
  const long long budget = get_or<long long>(config, "step_budget", 200000);
  const std::uint64_t seed = get_or<std::uint64_t>(config, "seed", 1);
  const std::string map_id = get_or<std::string>(config, "map_id", "map");

  ExplorationStats st = random_explore(spec, horizon, budget, seed, map_id);
  return Json{{"map", st.map_id},
              {"horizon", st.horizon},
              {"seed", st.seed},
              {"total_steps", st.total_steps},
              {"episodes", st.episodes},
              {"exits", st.exits},
              {"deaths", st.deaths},
              {"truncations", st.truncations},
              {"exit_rate", st.exit_rate},
              {"tool_version", kToolVersion}};
}

Json run_density_experiment(const Json &config, const std::string &out_dir) {
  const auto t0 = std::chrono::steady_clock::now();

  const auto map_paths = get_or<std::vector<std::string>>(config, "maps", {});
  if (map_paths.empty())
    fail_validation("density experiment config needs 'maps'");
  const auto horizons =
      get_or<std::vector<int>>(config, "horizons", {12, 13, 14});
  const long long budget = get_or<long long>(config, "step_budget", 200000);
  const bool oracle_only = get_or<bool>(config, "oracle_only", false);
  const long long state_cap = get_or<long long>(config, "state_cap", 1000000);
  const auto formats = parse_formats(config);
  const int threads = resolve_threads(get_or<int>(config, "threads", 0));
  std::vector<std::uint64_t> seeds =
      oracle_only ? std::vector<std::uint64_t>{1} : parse_seeds(config);

  Json echo = config;
  echo["seeds"] = seeds;
  echo["horizons"] = horizons;
  const std::string config_line = echo.dump();

  struct Variant {
    std::string name;
    MapSpec spec;
    long long e_plus = 0, e_total = 0;
    std::vector<double> dp; // cumulative exit probability per horizon
  };
  std::vector<Variant> variants;
  int max_h = 0;
  for (int h : horizons)
    max_h = std::max(max_h, h);
  for (const auto &path : map_paths) {
    Variant v;
    v.name = stem_of(path);
    v.spec = parse_map_file(path);
    InducedGraph g = enumerate_graph(v.spec, state_cap);
    std::tie(v.e_plus, v.e_total) = density_rational(g);
    v.dp = exact_exit_probability(g, max_h);
    variants.push_back(std::move(v));
  }

  // one Monte Carlo run per (variant, horizon, seed)
  struct Run {
    size_t variant, horizon_idx, seed_idx;
    ExplorationStats stats;
  };
  std::vector<Run> runs;
  if (!oracle_only) {
    for (size_t v = 0; v < variants.size(); ++v)
      for (size_t h = 0; h < horizons.size(); ++h)
        for (size_t s = 0; s < seeds.size(); ++s)
          runs.push_back(Run{v, h, s, {}});
    parallel_for(runs.size(), threads, [&](size_t i) {
      Run &r = runs[i];
      r.stats = random_explore(variants[r.variant].spec,
                               horizons[r.horizon_idx], budget,
                               seeds[r.seed_idx], variants[r.variant].name);
    });
  }

  Json report{{"config", echo},
              {"tool_version", kToolVersion},
              {"method", "uniform-random exploration with an exact "
                         "absorption-probability oracle"}};
  Json cells = Json::array();
  std::vector<std::string> files;

  if (formats.contains("csv")) {
    CsvWriter oracle({"map", "variant", "horizon", "rewarded_edges", "edges",
                      "density", "exit_probability"});
    oracle.comment("config", config_line);
    for (size_t v = 0; v < variants.size(); ++v)
      for (int h : horizons)
        oracle.row({map_paths[v], variants[v].name, std::to_string(h),
                    std::to_string(variants[v].e_plus),
                    std::to_string(variants[v].e_total),
                    fmt_double(static_cast<double>(variants[v].e_plus) /
                               static_cast<double>(variants[v].e_total)),
                    fmt_double(variants[v].dp[static_cast<size_t>(h)])});
    const std::string path = join_path(out_dir, "density_oracle.csv");
    oracle.write(path);
    files.push_back(path);
  }

  if (!oracle_only && formats.contains("csv")) {
    CsvWriter csv({"map", "variant", "horizon", "seed", "episodes", "exits",
                   "deaths", "truncations", "exit_rate"});
    csv.comment("config", config_line);
    for (const Run &r : runs)
      csv.row({map_paths[r.variant], variants[r.variant].name,
               std::to_string(horizons[r.horizon_idx]),
               std::to_string(seeds[r.seed_idx]),
               std::to_string(r.stats.episodes), std::to_string(r.stats.exits),
               std::to_string(r.stats.deaths),
               std::to_string(r.stats.truncations),
               fmt_double(r.stats.exit_rate)});
    const std::string path = join_path(out_dir, "density_runs.csv");
    csv.write(path);
    files.push_back(path);
  }

  std::vector<SvgSeries> chart;
  for (size_t h = 0; h < horizons.size(); ++h) {
    SvgSeries mc{"h=" + std::to_string(horizons[h]) + " (200k random steps)",
                 {}, {}, {}};
    SvgSeries dp{"h=" + std::to_string(horizons[h]) + " (exact)", {}, {}, {}};
    for (size_t v = 0; v < variants.size(); ++v) {
      const double density = static_cast<double>(variants[v].e_plus) /
                             static_cast<double>(variants[v].e_total);
      Json cell{{"map", map_paths[v]},
                {"variant", variants[v].name},
                {"horizon", horizons[h]},
                {"density", density},
                {"density_rational", std::to_string(variants[v].e_plus) + "/" +
                                         std::to_string(variants[v].e_total)},
                {"dp_exit_probability",
                 variants[v].dp[static_cast<size_t>(horizons[h])]}};
      dp.x.push_back(density);
      dp.y.push_back(variants[v].dp[static_cast<size_t>(horizons[h])]);
      if (!oracle_only) {
        std::vector<double> rates;
        for (const Run &r : runs)
          if (r.variant == v && r.horizon_idx == h)
            rates.push_back(r.stats.exit_rate);
        const double m = mean(rates);
        double half = 0.0;
        if (rates.size() > 1)
          half = 1.959963984540054 *
                 std::sqrt(sample_variance(rates) /
                           static_cast<double>(rates.size()));
        mc.x.push_back(density);
        mc.y.push_back(m);
        mc.ci_half.push_back(half);
        cell["mc_mean_exit_rate"] = m;
        cell["mc_ci_half"] = half;
      }
      cells.push_back(std::move(cell));
    }
    if (!oracle_only)
      chart.push_back(std::move(mc));
    chart.push_back(std::move(dp));
  }
  report["cells"] = std::move(cells);

  if (formats.contains("svg")) {
    const std::string path = join_path(out_dir, "density_exit_rate.svg");
    write_svg(path, config_line,
              line_chart_svg("Exit rate vs reward density", "reward density",
                             "exit rate", chart));
    files.push_back(path);
  }

  report["wall_clock_s"] = elapsed_s(t0);
  report["files"] = files;
  if (formats.contains("json"))
    write_text_file(join_path(out_dir, "report.json"), report.dump(2) + "\n");
  return report;
}

Json run_delay_experiment(const Json &config, const std::string &out_dir) {
  const auto t0 = std::chrono::steady_clock::now();

  const std::string map_path = get_or<std::string>(config, "map", "");
  if (map_path.empty())
    fail_validation("delay experiment config needs 'map'");
  const auto conditions =
      get_or<std::vector<int>>(config, "conditions", {-1, 0, 1, 2, 3, 4});
  const auto seeds = parse_seeds(config);
  const auto formats = parse_formats(config);
  const int threads = resolve_threads(get_or<int>(config, "threads", 0));

  LearnSchedule sched;
  sched.total_steps = get_or<long long>(config, "total_steps", 120000);
  sched.eps_anneal_steps =
      get_or<long long>(config, "eps_anneal_steps", sched.total_steps / 3);
  sched.gamma = get_or<double>(config, "gamma", 0.95);
  sched.learning_rate = get_or<double>(config, "learning_rate", 0.1);
  sched.eval_interval = get_or<long long>(config, "eval_interval", 2500);
  sched.eval_episodes = get_or<int>(config, "eval_episodes", 32);
  sched.horizon = get_or<int>(config, "horizon", 28);
  const bool strict_sign = get_or<bool>(config, "strict_paper_sign", false);
  const bool flush = get_or<bool>(config, "flush_on_truncation", true);

  Json echo = config;
  echo["seeds"] = seeds;
  echo["conditions"] = conditions;
  const std::string config_line = echo.dump();

  const MapSpec spec = parse_map_file(map_path);

  struct Task {
    size_t cond_idx, seed_idx;
    QLearnResult result;
  };
  std::vector<Task> tasks;
  for (size_t c = 0; c < conditions.size(); ++c)
    for (size_t s = 0; s < seeds.size(); ++s)
      tasks.push_back(Task{c, s, {}});

  parallel_for(tasks.size(), threads, [&](size_t i) {
    Task &t = tasks[i];
    std::optional<ShapingConfig> shaping;
    if (conditions[t.cond_idx] >= 0)
      shaping = ShapingConfig{conditions[t.cond_idx], sched.gamma, strict_sign,
                              flush};
    t.result = q_learning(spec, shaping, sched, seeds[t.seed_idx]);
  });

  std::vector<std::string> files;
  if (formats.contains("csv")) {
    CsvWriter csv({"condition", "seed", "train_step", "exit_rate"});
    csv.comment("config", config_line);
    for (const Task &t : tasks)
      for (const CurvePoint &p : t.result.curve)
        csv.row({condition_label(conditions[t.cond_idx]),
                 std::to_string(seeds[t.seed_idx]), std::to_string(p.step),
                 fmt_double(p.exit_rate)});
    const std::string path = join_path(out_dir, "delay_curves.csv");
    csv.write(path);
    files.push_back(path);
  }

  // aggregate per condition
  Json summary = Json::array();
  std::vector<SvgSeries> chart;
  std::vector<double> shaped_d, shaped_mean_auc;
  std::vector<std::vector<double>> final_by_cond(conditions.size());
  std::vector<double> none_finals;

  for (size_t c = 0; c < conditions.size(); ++c) {
    std::vector<const QLearnResult *> results;
    for (const Task &t : tasks)
      if (t.cond_idx == c)
        results.push_back(&t.result);

    const size_t n_points = results.front()->curve.size();
    SvgSeries series{condition_label(conditions[c]), {}, {}, {}};
    for (size_t p = 0; p < n_points; ++p) {
      std::vector<double> vals;
      for (const auto *r : results)
        vals.push_back(r->curve[p].exit_rate);
      series.x.push_back(
          static_cast<double>(results.front()->curve[p].step));
      series.y.push_back(mean(vals));
      series.ci_half.push_back(
          vals.size() > 1
              ? 1.959963984540054 *
                    std::sqrt(sample_variance(vals) /
                              static_cast<double>(vals.size()))
              : 0.0);
    }

    std::vector<double> aucs, finals;
    for (const auto *r : results) {
      double auc = 0.0;
      for (const auto &pt : r->curve)
        auc += pt.exit_rate;
      aucs.push_back(auc / static_cast<double>(r->curve.size()));
      finals.push_back(r->final_exit_rate);
    }
    final_by_cond[c] = finals;
    if (conditions[c] < 0)
      none_finals = finals;
    else {
      shaped_d.push_back(conditions[c]);
      shaped_mean_auc.push_back(mean(aucs));
    }

    summary.push_back(Json{{"condition", condition_label(conditions[c])},
                           {"mean_final_exit_rate", mean(finals)},
                           {"mean_auc", mean(aucs)},
                           {"seeds", seeds.size()}});
    chart.push_back(std::move(series));
  }

  Json stats = Json::object();
  if (!none_finals.empty()) {
    Json vs = Json::object();
    for (size_t c = 0; c < conditions.size(); ++c) {
      if (conditions[c] < 0)
        continue;
      vs[condition_label(conditions[c])] =
          welch_one_sided_p(final_by_cond[c], none_finals);
    }
    stats["welch_p_vs_none"] = std::move(vs);
  }
  if (shaped_d.size() >= 3) {
    SpearmanResult sp = spearman_decreasing(shaped_d, shaped_mean_auc);
    stats["spearman_rho_auc_vs_d"] = sp.rho;
    stats["spearman_p_decreasing"] = sp.p_decreasing;
  }

  std::vector<std::string> more;
  if (formats.contains("svg")) {
    const std::string path = join_path(out_dir, "delay_curves.svg");
    write_svg(path, config_line,
              line_chart_svg("Greedy exit rate during training",
                             "training step", "exit rate", chart));
    files.push_back(path);
  }

  Json report{{"config", echo},
              {"tool_version", kToolVersion},
              {"method",
               "joint-action tabular Q-learning over the counter-augmented "
               "state space (small-scale stand-in for deep value "
               "decomposition learners)"},
              {"conditions", summary},
              {"stats", stats},
              {"wall_clock_s", elapsed_s(t0)},
              {"files", files}};
  if (formats.contains("json"))
    write_text_file(join_path(out_dir, "report.json"), report.dump(2) + "\n");
  return report;
}

Json run_discovery_experiment(const Json &config, const std::string &out_dir) {
  const auto t0 = std::chrono::steady_clock::now();

  const std::string map_path = get_or<std::string>(config, "map", "");
  if (map_path.empty())
    fail_validation("discovery experiment config needs 'map'");
  const auto agents = get_or<std::vector<int>>(config, "agents", {1});
  const int runs = get_or<int>(config, "runs", 1);
  const std::uint64_t seed = get_or<std::uint64_t>(config, "seed", 1);
  const auto formats = parse_formats(config);

  DiscoveryConfig dcfg;
  dcfg.total_steps = get_or<long long>(config, "total_steps", 100000);
  dcfg.cluster_interval_episodes = get_or<int>(config, "cluster_interval", 5);
  dcfg.horizon = get_or<int>(config, "horizon", 40);
  dcfg.tolerance = get_or<double>(config, "tolerance", 1e-8);
  dcfg.max_iterations = get_or<int>(config, "max_iterations", 10000);

  Json echo = config;
  echo["agents"] = agents;
  echo["runs"] = runs;
  const std::string config_line = echo.dump();

  const MapSpec base = parse_map_file(map_path);

  std::vector<std::string> files;
  Json per_agent = Json::array();
  std::vector<std::vector<double>> timing_samples;
  std::vector<std::string> timing_labels;

  CsvWriter timing_csv({"n_agents", "run", "seed", "seconds_total",
                        "seconds_per_cluster", "clustering_rounds",
                        "unconverged_rounds", "graph_vertices", "graph_edges",
                        "episodes"});
  timing_csv.comment("config", config_line);
  timing_csv.comment("note", "wall-clock fields; excluded from determinism "
                             "comparisons");

  // sequential on purpose: concurrent runs would distort the timing columns
  for (int n : agents) {
    const MapSpec spec = restrict_agents(base, n);
    std::vector<double> totals;
    DiscoveryResult first_run;
    for (int r = 0; r < runs; ++r) {
      DiscoveryResult res =
          run_discovery(spec, dcfg, seed + static_cast<std::uint64_t>(r));
      totals.push_back(res.total_cluster_seconds);
      timing_csv.row(
          {std::to_string(n), std::to_string(r),
           std::to_string(seed + static_cast<std::uint64_t>(r)),
           fmt_double(res.total_cluster_seconds),
           fmt_double(res.clustering_rounds
                          ? res.total_cluster_seconds /
                                static_cast<double>(res.clustering_rounds)
                          : 0.0),
           std::to_string(res.clustering_rounds),
           std::to_string(res.unconverged_rounds),
           std::to_string(res.graph_vertices), std::to_string(res.graph_edges),
           std::to_string(res.episodes)});
      if (r == 0)
        first_run = std::move(res);
    }
    timing_samples.push_back(totals);
    timing_labels.push_back(std::to_string(n));

    // heatmap of run 0
    const auto &grid = first_run.scores.vertex_scores;
    if (formats.contains("csv")) {
      std::vector<std::string> cols;
      for (int x = 0; x < base.width; ++x)
        cols.push_back("x" + std::to_string(x));
      CsvWriter csv(cols);
      csv.comment("config", config_line);
      csv.comment("n_agents", std::to_string(n));
      csv.comment("score", "sum over states at this cell of incident "
                           "cut-edge counts");
      for (int y = 0; y < base.height; ++y) {
        std::vector<std::string> row;
        for (int x = 0; x < base.width; ++x)
          row.push_back(
              fmt_double(grid[static_cast<size_t>(y * base.width + x)]));
        csv.row(row);
      }
      const std::string path = join_path(
          out_dir, "heatmap_" + std::to_string(n) + "agents.csv");
      csv.write(path);
      files.push_back(path);
    }
    if (formats.contains("svg")) {
      std::vector<bool> mask;
      for (int y = 0; y < base.height; ++y)
        for (int x = 0; x < base.width; ++x)
          mask.push_back(base.walkable(Pos{x, y}));
      const std::string path = join_path(
          out_dir, "heatmap_" + std::to_string(n) + "agents.svg");
      write_svg(path, config_line,
                heatmap_svg("Bottleneck score, " + std::to_string(n) +
                                " agent(s)",
                            base.width, base.height, grid, mask));
      files.push_back(path);
    }

    // ranked cells (walkable only)
    std::vector<std::pair<double, int>> ranked;
    for (int i = 0; i < base.width * base.height; ++i)
      if (base.walkable(Pos{i % base.width, i / base.width}))
        ranked.emplace_back(grid[static_cast<size_t>(i)], i);
    std::sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    Json top = Json::array();
    for (size_t i = 0; i < std::min<size_t>(5, ranked.size()); ++i)
      top.push_back(Json{{"x", ranked[i].second % base.width},
                         {"y", ranked[i].second / base.width},
                         {"score", ranked[i].first}});

    per_agent.push_back(
        Json{{"n_agents", n},
             {"episodes", first_run.episodes},
             {"total_steps", first_run.total_steps},
             {"clustering_rounds", first_run.clustering_rounds},
             {"unconverged_rounds", first_run.unconverged_rounds},
             {"graph_vertices", first_run.graph_vertices},
             {"graph_edges", first_run.graph_edges},
             {"seconds_total_first_run", first_run.total_cluster_seconds},
             {"top_cells", std::move(top)}});
  }

  if (formats.contains("csv")) {
    const std::string path = join_path(out_dir, "discovery_timing.csv");
    timing_csv.write(path);
    files.push_back(path);
  }
  if (formats.contains("svg")) {
    const std::string path = join_path(out_dir, "discovery_timing.svg");
    write_svg(path, config_line,
              boxplot_svg("Clustering time vs number of agents", "seconds",
                          timing_labels, timing_samples, true));
    files.push_back(path);
  }

  Json report{{"config", echo},
              {"tool_version", kToolVersion},
              {"agents", per_agent},
              {"wall_clock_s", elapsed_s(t0)},
              {"files", files}};
  if (formats.contains("json"))
    write_text_file(join_path(out_dir, "report.json"), report.dump(2) + "\n");
  return report;
}

} // namespace zidlab

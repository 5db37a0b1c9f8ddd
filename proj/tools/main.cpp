// zidlab command line interface. Talks to the core exclusively through the
// C API in zidlab.h; everything here is argument parsing and printing.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zidlab.h"

namespace {

using nlohmann::json;

struct MapHandle {
  zid_map *ptr = nullptr;
  ~MapHandle() { zid_map_free(ptr); }
};

struct GraphHandle {
  zid_graph *ptr = nullptr;
  ~GraphHandle() { zid_graph_free(ptr); }
};

struct OwnedString {
  char *ptr = nullptr;
  ~OwnedString() { zid_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

int fail(int rc) {
  std::cerr << "error: " << zid_last_error() << "\n";
  return rc;
}

std::vector<std::uint64_t> parse_seed_list(const std::string &text) {
  std::vector<std::uint64_t> seeds;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t a = std::stoull(text.substr(0, dots));
    const std::uint64_t b = std::stoull(text.substr(dots + 2));
    for (std::uint64_t s = a; s <= b; ++s)
      seeds.push_back(s);
    return seeds;
  }
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos)
      comma = text.size();
    seeds.push_back(std::stoull(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return seeds;
}

std::vector<std::string> split_list(const std::string &text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos)
      comma = text.size();
    out.push_back(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

void write_file(const std::string &dir, const std::string &name,
                const std::string &content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
  out << content;
}

json formats_json(const std::string &formats) {
  json arr = json::array();
  for (const auto &f : split_list(formats))
    arr.push_back(f);
  return arr;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"zidlab: reward-structure analysis for deterministic "
               "multi-agent grid-worlds"};
  app.require_subcommand(1);

  std::string map_path, out_dir = "out", formats = "csv,json,svg";
  std::string seeds_text = "1..30";
  long long state_cap = 1000000;
  std::uint64_t seed = 1;
  int threads = 0;

  // analyze
  auto *analyze = app.add_subcommand(
      "analyze", "Density, minimum cut and incentive classification of a map");
  analyze->add_option("map", map_path, "map file")->required();
  analyze->add_option("--state-cap", state_cap, "reachable-state limit");
  analyze->add_option("--out", out_dir, "output directory");
  int shaped_d = -1;
  double shaped_gamma = 1.0;
  analyze->add_option("--shaped-d", shaped_d,
                      "analyze the delayed-shaping graph with this delay");
  analyze->add_option("--shaped-gamma", shaped_gamma,
                      "discount used for the shaped weights");

  // enumerate
  auto *enumerate = app.add_subcommand(
      "enumerate", "Dump the induced transition graph as JSON");
  enumerate->add_option("map", map_path, "map file")->required();
  enumerate->add_option("--state-cap", state_cap, "reachable-state limit");
  enumerate->add_option("--out", out_dir, "output directory");

  // explore
  auto *explore =
      app.add_subcommand("explore", "Uniform-random exploration statistics");
  explore->add_option("map", map_path, "map file")->required();
  int horizon = 12;
  long long steps = 200000;
  explore->add_option("--horizon", horizon, "episode time limit");
  explore->add_option("--steps", steps, "total step budget");
  explore->add_option("--seed", seed, "run seed");
  explore->add_option("--out", out_dir, "output directory");

  // density-experiment
  auto *density = app.add_subcommand(
      "density-experiment",
      "Random-exploration exit rate across map variants and horizons");
  std::string maps_text, horizons_text = "12,13,14";
  bool oracle_only = false;
  density->add_option("--maps", maps_text, "comma-separated map files")
      ->required();
  density->add_option("--horizons", horizons_text, "comma-separated horizons");
  density->add_option("--steps", steps, "step budget per run");
  density->add_option("--seeds", seeds_text, "seed list (a..b or a,b,c)");
  density->add_flag("--oracle-only", oracle_only,
                    "exact probabilities only, no simulation");
  density->add_option("--state-cap", state_cap, "reachable-state limit");
  density->add_option("--out", out_dir, "output directory");
  density->add_option("--format", formats, "csv,json,svg filter");
  density->add_option("--threads", threads, "worker threads (0 = auto)");

  // delay-experiment
  auto *delay = app.add_subcommand(
      "delay-experiment",
      "Tabular Q-learning under delayed potential-based shaping");
  std::string conditions_text = "none,0,1,2,3,4";
  long long total_steps = 120000, anneal = 0, eval_interval = 2500;
  int eval_episodes = 32, learn_horizon = 28;
  double gamma = 0.95, lr = 0.1;
  bool strict_sign = false, no_flush = false;
  delay->add_option("map", map_path, "map file")->required();
  delay->add_option("--d", conditions_text,
                    "conditions: comma list of delays, 'none' = no shaping");
  delay->add_option("--seeds", seeds_text, "seed list (a..b or a,b,c)");
  delay->add_option("--steps", total_steps, "training steps per run");
  delay->add_option("--anneal", anneal,
                    "epsilon anneal steps (default steps/3)");
  delay->add_option("--gamma", gamma, "discount");
  delay->add_option("--lr", lr, "learning rate");
  delay->add_option("--eval-interval", eval_interval, "steps between evals");
  delay->add_option("--eval-episodes", eval_episodes, "episodes per eval");
  delay->add_option("--horizon", learn_horizon, "episode time limit");
  delay->add_flag("--strict-paper-sign", strict_sign,
                  "use the potential difference with the published sign");
  delay->add_flag("--no-flush", no_flush,
                  "do not flush pending potential at truncation");
  delay->add_option("--out", out_dir, "output directory");
  delay->add_option("--format", formats, "csv,json,svg filter");
  delay->add_option("--threads", threads, "worker threads (0 = auto)");

  // discover
  auto *discover = app.add_subcommand(
      "discover", "Spectral bottleneck discovery from random exploration");
  std::string agents_text = "1";
  int runs = 1, interval = 5, disc_horizon = 40;
  long long disc_steps = 100000;
  discover->add_option("map", map_path, "map file")->required();
  discover->add_option("--agents", agents_text, "comma list of agent counts");
  discover->add_option("--steps", disc_steps, "exploration steps per run");
  discover->add_option("--interval", interval, "episodes between clusterings");
  discover->add_option("--horizon", disc_horizon, "episode time limit");
  discover->add_option("--runs", runs, "runs per agent count");
  discover->add_option("--seed", seed, "base seed");
  discover->add_option("--out", out_dir, "output directory");
  discover->add_option("--format", formats, "csv,json,svg filter");

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) {
    MapHandle map;
    if (zid_map_parse_file(map_path.c_str(), &map.ptr))
      return fail(1);
    json cfg{{"state_cap", state_cap},
             {"shaped_d", shaped_d},
             {"shaped_gamma", shaped_gamma}};
    OwnedString report;
    if (int rc = zid_analyze(map.ptr, cfg.dump().c_str(), &report.ptr))
      return fail(rc);
    json r = json::parse(report.str());
    std::cout << "vertices:          " << r["vertices"] << "\n"
              << "edges:             " << r["edges"] << "\n"
              << "rewarded edges:    " << r["rewarded_edges"] << "\n"
              << "density:           " << r["density_rational"].get<std::string>()
              << " = " << r["density"] << "\n"
              << "winning walk:      " << r["has_winning_walk"] << "\n"
              << "min cut size:      " << r["min_cut"]["cut_size"] << "\n"
              << "max cut weight:    " << r["min_cut"]["max_cut_weight"] << "\n"
              << "zero-incentive:    " << r["min_cut"]["is_zid"] << "\n";
    write_file(out_dir, "analyze.json", report.str() + "\n");
    return 0;
  }

  if (enumerate->parsed()) {
    MapHandle map;
    if (zid_map_parse_file(map_path.c_str(), &map.ptr))
      return fail(1);
    GraphHandle graph;
    if (int rc = zid_graph_enumerate(map.ptr, state_cap, &graph.ptr))
      return fail(rc);
    OwnedString dump;
    if (int rc = zid_graph_to_json(graph.ptr, &dump.ptr))
      return fail(rc);
    OwnedString stats;
    if (int rc = zid_graph_stats_json(graph.ptr, &stats.ptr))
      return fail(rc);
    std::cout << stats.str() << "\n";
    write_file(out_dir, "graph.json", dump.str() + "\n");
    return 0;
  }

  if (explore->parsed()) {
    MapHandle map;
    if (zid_map_parse_file(map_path.c_str(), &map.ptr))
      return fail(1);
    json cfg{{"horizon", horizon},
             {"step_budget", steps},
             {"seed", seed},
             {"map_id", std::filesystem::path(map_path).stem().string()}};
    OwnedString report;
    if (int rc = zid_run_explore(map.ptr, cfg.dump().c_str(), &report.ptr))
      return fail(rc);
    std::cout << report.str() << "\n";
    write_file(out_dir, "explore.json", report.str() + "\n");
    return 0;
  }

  if (density->parsed()) {
    json cfg{{"maps", split_list(maps_text)},
             {"horizons", json::array()},
             {"step_budget", steps},
             {"seeds", parse_seed_list(seeds_text)},
             {"oracle_only", oracle_only},
             {"state_cap", state_cap},
             {"formats", formats_json(formats)},
             {"threads", threads}};
    for (const auto &h : split_list(horizons_text))
      cfg["horizons"].push_back(std::stoi(h));
    OwnedString report;
    if (int rc = zid_run_density_experiment(cfg.dump().c_str(),
                                            out_dir.c_str(), &report.ptr))
      return fail(rc);
    json r = json::parse(report.str());
    std::cout << "wrote " << r["files"].size() << " files to " << out_dir
              << " in " << r["wall_clock_s"] << " s\n";
    return 0;
  }

  if (delay->parsed()) {
    json conditions = json::array();
    for (const auto &c : split_list(conditions_text))
      conditions.push_back(c == "none" ? -1 : std::stoi(c));
    json cfg{{"map", map_path},
             {"conditions", conditions},
             {"seeds", parse_seed_list(seeds_text)},
             {"total_steps", total_steps},
             {"eps_anneal_steps", anneal > 0 ? anneal : total_steps / 3},
             {"gamma", gamma},
             {"learning_rate", lr},
             {"eval_interval", eval_interval},
             {"eval_episodes", eval_episodes},
             {"horizon", learn_horizon},
             {"strict_paper_sign", strict_sign},
             {"flush_on_truncation", !no_flush},
             {"formats", formats_json(formats)},
             {"threads", threads}};
    OwnedString report;
    if (int rc = zid_run_delay_experiment(cfg.dump().c_str(), out_dir.c_str(),
                                          &report.ptr))
      return fail(rc);
    json r = json::parse(report.str());
    std::cout << "conditions:\n";
    for (const auto &c : r["conditions"])
      std::cout << "  " << c["condition"].get<std::string>()
                << "  final=" << c["mean_final_exit_rate"]
                << "  auc=" << c["mean_auc"] << "\n";
    if (r["stats"].contains("spearman_rho_auc_vs_d"))
      std::cout << "spearman rho(auc, d) = " << r["stats"]["spearman_rho_auc_vs_d"]
                << "  p(decreasing) = " << r["stats"]["spearman_p_decreasing"]
                << "\n";
    std::cout << "wrote " << r["files"].size() << " files to " << out_dir
              << " in " << r["wall_clock_s"] << " s\n";
    return 0;
  }

  if (discover->parsed()) {
    json agents = json::array();
    for (const auto &a : split_list(agents_text))
      agents.push_back(std::stoi(a));
    json cfg{{"map", map_path},          {"agents", agents},
             {"runs", runs},             {"seed", seed},
             {"total_steps", disc_steps}, {"cluster_interval", interval},
             {"horizon", disc_horizon},  {"formats", formats_json(formats)}};
    OwnedString report;
    if (int rc = zid_run_discovery(cfg.dump().c_str(), out_dir.c_str(),
                                   &report.ptr))
      return fail(rc);
    json r = json::parse(report.str());
    for (const auto &a : r["agents"]) {
      const auto &top = a["top_cells"][0];
      std::cout << a["n_agents"] << " agent(s): top cell (" << top["x"] << ","
                << top["y"] << ") score=" << top["score"]
                << "  clustering=" << a["seconds_total_first_run"] << " s\n";
    }
    std::cout << "wrote " << r["files"].size() << " files to " << out_dir
              << "\n";
    return 0;
  }

  return 0;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "core/csv.hpp"
#include "core/experiments.hpp"
#include "core/rng.hpp"
#include "core/svg.hpp"
#include "test_util.hpp"

using namespace zidlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("double formatting round-trips") {
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    double v = (rng.next_double() - 0.5) * std::pow(10.0, double(rng.next_below(12)) - 6.0);
    const std::string s = fmt_double(v);
    double back = 0.0;
    std::sscanf(s.c_str(), "%lf", &back);
    CHECK(back == v);
  }
  CHECK(fmt_double(0.5) == "0.5");
  CHECK(fmt_double(3.0) == "3");
}

TEST_CASE("csv writer emits config comments and stable bodies") {
  CsvWriter csv({"a", "b"});
  csv.comment("config", "{\"x\":1}");
  csv.row({"1", "0.5"});
  csv.row({"2", "0.25"});
  const std::string text = csv.str();
  CHECK(text == "# config: {\"x\":1}\na,b\n1,0.5\n2,0.25\n");
  CHECK_THROWS_AS(csv.row({"only-one"}), ZidError);

  fs::path dir = fresh_dir("zidlab_csv_test");
  csv.write((dir / "t.csv").string());
  CHECK(read_config_comment((dir / "t.csv").string()) == "{\"x\":1}");
}

TEST_CASE("svg writers produce well-formed documents") {
  SvgSeries s{"run", {0, 1, 2}, {0.1, 0.5, 0.4}, {0.02, 0.02, 0.02}};
  const std::string chart = line_chart_svg("t", "x", "y", {s});
  CHECK(chart.find("<svg") != std::string::npos);
  CHECK(chart.find("polyline") != std::string::npos);
  CHECK(chart.find("</svg>") != std::string::npos);

  const std::string heat =
      heatmap_svg("h", 2, 2, {0.0, 1.0, 0.5, 0.2}, {true, true, true, false});
  CHECK(heat.find("<rect") != std::string::npos);

  const std::string box = boxplot_svg("b", "s", {"1", "2"},
                                      {{0.1, 0.2, 0.3}, {1.0, 2.0, 3.0}}, true);
  CHECK(box.find("</svg>") != std::string::npos);
}

TEST_CASE("density experiment writes provenance-stamped deterministic files") {
  fs::path dir = fresh_dir("zidlab_density_test");
  Json config{{"maps", {map_path("density.map"), map_path("density_m4.map")}},
              {"horizons", {12}},
              {"step_budget", 5000},
              {"seeds", {1, 2, 3}},
              {"threads", 2}};
  Json report = run_density_experiment(config, dir.string());
  CHECK(report["cells"].size() == 2);
  CHECK(fs::exists(dir / "density_runs.csv"));
  CHECK(fs::exists(dir / "density_oracle.csv"));
  CHECK(fs::exists(dir / "density_exit_rate.svg"));
  CHECK(fs::exists(dir / "report.json"));

  // config round-trips from the file header
  Json echoed =
      Json::parse(read_config_comment((dir / "density_runs.csv").string()));
  CHECK(echoed["step_budget"] == 5000);
  CHECK(echoed["seeds"] == Json({1, 2, 3}));

  // re-running yields byte-identical csv bodies
  const std::string first = slurp(dir / "density_runs.csv");
  fs::path dir2 = fresh_dir("zidlab_density_test2");
  run_density_experiment(config, dir2.string());
  CHECK(first == slurp(dir2 / "density_runs.csv"));
  CHECK(slurp(dir / "density_oracle.csv") == slurp(dir2 / "density_oracle.csv"));
  CHECK(slurp(dir / "density_exit_rate.svg") ==
        slurp(dir2 / "density_exit_rate.svg"));

  SUBCASE("oracle-only skips simulation") {
    fs::path dir3 = fresh_dir("zidlab_density_oracle");
    Json cfg = config;
    cfg["oracle_only"] = true;
    Json r = run_density_experiment(cfg, dir3.string());
    CHECK(fs::exists(dir3 / "density_oracle.csv"));
    CHECK_FALSE(fs::exists(dir3 / "density_runs.csv"));
  }
}

TEST_CASE("delay experiment smoke run") {
  fs::path dir = fresh_dir("zidlab_delay_test");
  Json config{{"map", map_path("two_lasers_small.map")},
              {"conditions", {-1, 0}},
              {"seeds", {1, 2}},
              {"total_steps", 4000},
              {"eval_interval", 2000},
              {"eval_episodes", 8},
              {"horizon", 20},
              {"threads", 2}};
  Json report = run_delay_experiment(config, dir.string());
  CHECK(report["conditions"].size() == 2);
  CHECK(report["stats"].contains("welch_p_vs_none"));
  CHECK(fs::exists(dir / "delay_curves.csv"));
  CHECK(fs::exists(dir / "delay_curves.svg"));

  const std::string first = slurp(dir / "delay_curves.csv");
  fs::path dir2 = fresh_dir("zidlab_delay_test2");
  run_delay_experiment(config, dir2.string());
  CHECK(first == slurp(dir2 / "delay_curves.csv"));
}

TEST_CASE("discovery experiment smoke run") {
  fs::path dir = fresh_dir("zidlab_discover_test");
  Json config{{"map", map_path("doorway.map")}, {"agents", {1}},
              {"runs", 2},                      {"seed", 1},
              {"total_steps", 3000},            {"horizon", 40}};
  Json report = run_discovery_experiment(config, dir.string());
  CHECK(report["agents"].size() == 1);
  CHECK(fs::exists(dir / "heatmap_1agents.csv"));
  CHECK(fs::exists(dir / "heatmap_1agents.svg"));
  CHECK(fs::exists(dir / "discovery_timing.csv"));
  CHECK(fs::exists(dir / "discovery_timing.svg"));

  // heatmaps are deterministic (timing csv is not and is exempt)
  const std::string first = slurp(dir / "heatmap_1agents.csv");
  fs::path dir2 = fresh_dir("zidlab_discover_test2");
  run_discovery_experiment(config, dir2.string());
  CHECK(first == slurp(dir2 / "heatmap_1agents.csv"));
}

TEST_CASE("analyze report carries the density and cut") {
  MapSpec spec = parse_map_file(map_path("density.map"));
  Json report = analyze_map(spec, 100000);
  CHECK(report["edges"] == 101);
  CHECK(report["rewarded_edges"] == 3);
  CHECK(report["density_rational"] == "3/101");
  CHECK(report["min_cut"]["cut_size"] == 3);
  CHECK(report["min_cut"]["is_zid"] == false);

  MapSpec two = parse_map_file(map_path("two_lasers.map"));
  Json zid_report = analyze_map(two, 1000000);
  CHECK(zid_report["min_cut"]["is_zid"] == true);

  // shaped analysis flips the classification at gamma = 1
  Json shaped = analyze_map(two, 2000000, 0, 1.0);
  CHECK(shaped["min_cut"]["is_zid"] == false);
}

TEST_CASE("explore run is reproducible") {
  MapSpec spec = parse_map_file(map_path("density.map"));
  Json cfg{{"horizon", 12}, {"step_budget", 5000}, {"seed", 9}};
  Json a = run_explore(spec, cfg);
  Json b = run_explore(spec, cfg);
  CHECK(a["exits"] == b["exits"]);
  CHECK(a["episodes"] == b["episodes"]);
}

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "noma/bench.hpp"
#include "noma/figures.hpp"
#include "noma/oracle.hpp"
#include "noma/rng.hpp"
#include "noma/sweep.hpp"

namespace {

std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("noma_test_" + tag);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

noma::ScenarioConfig small_cfg() {
  noma::ScenarioConfig cfg;
  cfg.n_users = {8, 12};
  cfg.n_rf_chains = {3};
  cfg.trials = 2;
  cfg.seed = 7;
  cfg.n_scatter_clusters = 1;
  cfg.angular_spread_deg = 0.5;
  cfg.carrier_normalization = 20.0;
  cfg.gwo_pop_size = 6;
  cfg.gwo_max_iters = 10;
  return cfg;
}

}  // namespace

TEST_CASE("config file parsing, overrides and precedence") {
  auto dir = temp_dir("cfg");
  auto path = dir / "scenario.cfg";
  {
    std::ofstream out(path);
    out << "# comment line\n";
    out << "n_users = 10, 20,30\n";
    out << "algorithm = gwo\n";
    out << "gamma_th_db = 8, 12\n";
    out << "carrier_normalization = 15\n\n";
  }
  noma::ScenarioConfig cfg = noma::parse_config_file(path.string());
  CHECK(cfg.n_users == std::vector<int>{10, 20, 30});
  CHECK(cfg.algorithm == noma::Algorithm::kGwo);
  CHECK(cfg.gamma_th_db == std::vector<double>{8.0, 12.0});
  CHECK(cfg.carrier_normalization == doctest::Approx(15.0));
  CHECK(cfg.trials == 50);  // untouched keys keep their defaults

  // CLI-style override wins over the file value.
  noma::apply_override(cfg, "carrier_normalization", "25");
  CHECK(cfg.carrier_normalization == doctest::Approx(25.0));
  noma::apply_override(cfg, "n_users", "40,50");
  CHECK(cfg.n_users == std::vector<int>{40, 50});

  CHECK_THROWS_AS(noma::apply_override(cfg, "no_such_key", "1"), noma::ConfigError);
  CHECK_THROWS_AS(noma::apply_override(cfg, "trials", "many"), noma::ConfigError);
  CHECK_THROWS_AS(noma::apply_override(cfg, "algorithm", "annealing"), noma::ConfigError);
  noma::apply_override(cfg, "rays_per_cluster", "-3");  // range-checked by validate
  try {
    cfg.validate();
    FAIL("expected ConfigError");
  } catch (const noma::ConfigError& e) {
    CHECK(std::string(e.what()).find("rays_per_cluster") != std::string::npos);
  }
  cfg.rays_per_cluster = 10;

  {
    std::ofstream out(path);
    out << "n_users = 30, 20\n";  // sweep lists must strictly increase
  }
  noma::ScenarioConfig bad = noma::parse_config_file(path.string());
  CHECK_THROWS_AS(bad.validate(), noma::ConfigError);
  CHECK_THROWS_AS(noma::parse_config_file((dir / "missing.cfg").string()),
                  noma::ConfigError);
}

TEST_CASE("unknown config keys are rejected by name") {
  auto dir = temp_dir("cfg2");
  auto path = dir / "bad.cfg";
  {
    std::ofstream out(path);
    out << "n_userz = 10\n";
  }
  try {
    noma::parse_config_file(path.string());
    FAIL("expected ConfigError");
  } catch (const noma::ConfigError& e) {
    CHECK(std::string(e.what()).find("n_userz") != std::string::npos);
  }
}

TEST_CASE("sweep output is deterministic and thread-count independent") {
  noma::ScenarioConfig cfg = small_cfg();
  cfg.algorithm = noma::Algorithm::kRandom;

  setenv("NOMA_LAB_THREADS", "1", 1);
  CHECK(noma::worker_threads() == 1);
  noma::SweepResult serial = noma::run_sweep(cfg);
  setenv("NOMA_LAB_THREADS", "2", 1);
  CHECK(noma::worker_threads() == 2);
  noma::SweepResult threaded = noma::run_sweep(cfg);
  unsetenv("NOMA_LAB_THREADS");

  CHECK(noma::rows_to_csv(serial.rows) == noma::rows_to_csv(threaded.rows));
  // Summaries match except the measured wall-clock column.
  auto strip_runtime = [](std::vector<noma::SweepPointSummary> s) {
    for (auto& x : s) x.runtime_mean_ms = 0.0;
    return s;
  };
  CHECK(noma::summaries_to_csv(strip_runtime(serial.summaries)) ==
        noma::summaries_to_csv(strip_runtime(threaded.summaries)));
  CHECK(serial.rows.size() == 4);  // 2 points x 2 trials

  setenv("NOMA_LAB_THREADS", "zero", 1);
  CHECK_THROWS_AS(noma::worker_threads(), noma::ConfigError);
  setenv("NOMA_LAB_THREADS", "0", 1);
  CHECK_THROWS_AS(noma::worker_threads(), noma::ConfigError);
  unsetenv("NOMA_LAB_THREADS");
}

TEST_CASE("raw csv schema is locked and runtime column is zero") {
  noma::ScenarioConfig cfg = small_cfg();
  noma::SweepResult res = noma::run_sweep(cfg);
  std::string csv = noma::rows_to_csv(res.rows);
  std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header ==
        "algorithm,n_users,n_clusters,trial,served_users,total_power_w,"
        "sum_rate_bps,energy_efficiency_bpj,runtime_ms,seed");
  CHECK(csv.find('\r') == std::string::npos);
  for (const auto& row : res.rows) CHECK(row.runtime_ms == 0.0);

  std::string summary_header = noma::summaries_to_csv(res.summaries);
  summary_header = summary_header.substr(0, summary_header.find('\n'));
  CHECK(summary_header.find("runtime_mean_ms") != std::string::npos);
}

TEST_CASE("each logged row replays from its seed") {
  noma::ScenarioConfig cfg = small_cfg();
  cfg.algorithm = noma::Algorithm::kKuc;
  noma::SweepResult res = noma::run_sweep(cfg);
  REQUIRE_FALSE(res.rows.empty());
  int sweep_index = 0;
  for (int n : cfg.n_users) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      noma::TrialOutcome replay =
          noma::run_trial(cfg, n, cfg.n_rf_chains[0], sweep_index, trial);
      const noma::ResultRow& logged = res.rows[sweep_index * cfg.trials + trial];
      CHECK(replay.row.seed == logged.seed);
      CHECK(replay.row.served_users == logged.served_users);
      CHECK(replay.row.total_power_w == logged.total_power_w);
      CHECK(replay.row.sum_rate_bps == logged.sum_rate_bps);
      CHECK(replay.row.seed ==
            noma::trial_seed(cfg.seed, sweep_index, trial));
    }
    ++sweep_index;
  }
}

TEST_CASE("summaries are the exact aggregate of the rows") {
  noma::ScenarioConfig cfg = small_cfg();
  noma::SweepResult res = noma::run_sweep(cfg);
  for (const auto& s : res.summaries) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : res.rows)
      if (r.n_users == s.n_users && r.n_clusters == s.n_clusters) {
        sum += r.served_users;
        ++n;
      }
    REQUIRE(n == s.trials);
    CHECK(s.served_mean == doctest::Approx(sum / n).epsilon(1e-12));
  }
}

TEST_CASE("oracle smoke run agrees on small instances") {
  noma::OracleOptions opts;
  opts.instances = 200;
  opts.seed = 11;
  noma::OracleReport report = noma::run_oracle(opts);
  CHECK(report.ok);
  CHECK(report.instances == 200);
  CHECK(report.feasible > 0);
  CHECK(report.infeasible > 0);
  CHECK(report.feasibility_mismatches == 0);
  CHECK(report.max_rel_deviation <= 1e-6);
  CHECK(report.max_uniform_rel_deviation <= 1e-9);
  std::string text = noma::oracle_report_text(report);
  CHECK(text.find("instances") != std::string::npos);
}

TEST_CASE("bench covers every algorithm at every grid point") {
  noma::ScenarioConfig cfg = small_cfg();
  cfg.n_users = {8};
  cfg.trials = 1;
  std::vector<noma::BenchRow> rows = noma::run_bench(cfg, 1);
  CHECK(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.median_ms >= 0.0);
    CHECK(r.n_users == 8);
    CHECK(r.reps == 1);
  }
  std::string csv = noma::bench_to_csv(rows);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "algorithm,n_users,n_clusters,reps,median_ms");
}

TEST_CASE("figure presets expose the published sweep axes") {
  const auto& ids = noma::figure_ids();
  CHECK(ids.size() == 6);
  noma::FigureSpec f5 = noma::figure_preset("fig5");
  CHECK(f5.x_key == "n_users");
  CHECK(f5.metric == "served_users");
  CHECK(f5.base.n_users == std::vector<int>{30, 60, 90, 120, 150});
  CHECK(f5.base.n_rf_chains == std::vector<int>{5});
  noma::FigureSpec f6 = noma::figure_preset("fig6");
  CHECK(f6.x_key == "n_clusters");
  CHECK(f6.base.n_rf_chains == std::vector<int>{5, 10, 15, 20, 25});
  noma::FigureSpec f9 = noma::figure_preset("fig9", 3);
  CHECK(f9.metric == "energy_efficiency_bpj");
  CHECK(f9.base.trials == 3);
  CHECK_THROWS_AS(noma::figure_preset("fig99"), noma::ConfigError);
}

TEST_CASE("chart rendering and figure output files") {
  noma::ChartSeries s;
  s.label = "demo";
  s.x = {1, 2, 3};
  s.y = {2, 4, 8};
  s.err = {0.1, 0.2, 0.3};
  std::string svg = noma::render_line_chart("t", "x", "y", {s});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("demo") != std::string::npos);

  noma::FigureSpec spec;
  spec.id = "mini";
  spec.title = "mini";
  spec.x_key = "n_users";
  spec.metric = "served_users";
  spec.x_label = "users";
  spec.y_label = "served";
  spec.base = small_cfg();
  spec.base.trials = 1;
  auto dir = temp_dir("fig");
  noma::FigureOutput out = noma::run_figure(spec, dir.string());
  REQUIRE(out.files.size() == 4);
  for (const auto& f : out.files) CHECK(std::filesystem::exists(f));
  CHECK(out.rows.size() == 2 * 6);  // 2 sweep points, 6 algorithms, 1 trial

  nlohmann::json meta = nlohmann::json::parse(slurp(dir / "mini_meta.json"));
  CHECK(meta["figure"] == "mini");
  CHECK(meta["trials"] == 1);
  CHECK(meta["seed"] == 7);
  CHECK(meta["channel"]["carrier_normalization"] == doctest::Approx(20.0));
}

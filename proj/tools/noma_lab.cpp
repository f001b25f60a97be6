// Link-level massive MIMO-NOMA simulation harness.
//
// Subcommands:
//   run     --config <path> [--out <csv>] [--summary <csv>] [--key value ...]
//   oracle  [--instances N] [--seed S]
//   bench   --config <path> [--out <csv>] [--reps N]
//   figures [--out-dir <dir>] [--only <id>] [--trials N]
//
// Any scenario key (see `--help`) can be overridden on the command line;
// precedence is CLI > config file > built-in defaults. Exit codes: 0 success,
// 1 config error, 2 oracle deviation, 3 runtime failure.

#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noma/bench.hpp"
#include "noma/figures.hpp"
#include "noma/oracle.hpp"
#include "noma/scenario.hpp"
#include "noma/sweep.hpp"

namespace {

// Registers one string option per scenario key so `--key value` works for
// every documented key; values are applied after the config file.
void add_scenario_options(CLI::App* app, std::map<std::string, std::string>& overrides) {
  for (const std::string& key : noma::config_keys())
    app->add_option("--" + key, overrides[key], "scenario key override");
}

noma::ScenarioConfig load_config(const std::string& path,
                                 const std::map<std::string, std::string>& overrides,
                                 const CLI::App* app) {
  noma::ScenarioConfig cfg;
  if (!path.empty()) cfg = noma::parse_config_file(path);
  for (const auto& [key, value] : overrides) {
    if (app->count("--" + key) > 0) noma::apply_override(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"massive MIMO-NOMA clustering and power allocation simulator"};
  app.require_subcommand(1);

  std::string run_config, run_out = "results.csv", run_summary;
  std::map<std::string, std::string> run_overrides;
  CLI::App* run = app.add_subcommand("run", "Monte-Carlo sweep for one algorithm");
  run->add_option("--config", run_config, "key = value scenario file");
  run->add_option("--out", run_out, "raw per-trial CSV path");
  run->add_option("--summary", run_summary, "per-point summary CSV path");
  add_scenario_options(run, run_overrides);

  int oracle_instances = 2000;
  std::uint64_t oracle_seed = 1;
  int oracle_max_clusters = 3, oracle_max_users = 6;
  CLI::App* oracle = app.add_subcommand("oracle", "closed form vs fixed-point cross-check");
  oracle->add_option("--instances", oracle_instances, "random instances (>= 1000 recommended)");
  oracle->add_option("--seed", oracle_seed, "instance generator seed");
  oracle->add_option("--max-clusters", oracle_max_clusters, "cluster count bound (<= 3)");
  oracle->add_option("--max-users", oracle_max_users, "served user bound (<= 6)");

  std::string bench_config, bench_out = "bench.csv";
  int bench_reps = 5;
  std::map<std::string, std::string> bench_overrides;
  CLI::App* bench = app.add_subcommand("bench", "wall-clock medians per algorithm and point");
  bench->add_option("--config", bench_config, "key = value scenario file");
  bench->add_option("--out", bench_out, "timing CSV path");
  bench->add_option("--reps", bench_reps, "repetitions per point (>= 5 recommended)");
  add_scenario_options(bench, bench_overrides);

  std::string fig_dir = "figures", fig_only;
  int fig_trials = 0;
  CLI::App* figures = app.add_subcommand("figures", "rebuild the six preset experiments");
  figures->add_option("--out-dir", fig_dir, "output directory (must exist)");
  figures->add_option("--only", fig_only, "single figure id (fig5..fig10)");
  figures->add_option("--trials", fig_trials, "override preset trial count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      noma::ScenarioConfig cfg = load_config(run_config, run_overrides, run);
      noma::SweepResult res = noma::run_sweep(cfg);
      noma::write_file(run_out, noma::rows_to_csv(res.rows));
      if (!run_summary.empty())
        noma::write_file(run_summary, noma::summaries_to_csv(res.summaries));
      std::fprintf(stderr, "wrote %zu rows to %s\n", res.rows.size(), run_out.c_str());
      return 0;
    }
    if (*oracle) {
      if (oracle_max_clusters < 1 || oracle_max_clusters > 3 || oracle_max_users < 1 ||
          oracle_max_users > 6)
        throw noma::ConfigError("oracle bounds exceed the supported range (clusters <= 3, "
                                "users <= 6)");
      if (oracle_instances < 1) throw noma::ConfigError("oracle --instances must be >= 1");
      noma::OracleOptions opt;
      opt.instances = oracle_instances;
      opt.seed = oracle_seed;
      opt.max_clusters = oracle_max_clusters;
      opt.max_users = oracle_max_users;
      noma::OracleReport rep = noma::run_oracle(opt);
      std::fputs(noma::oracle_report_text(rep).c_str(), stdout);
      return rep.ok ? 0 : 2;
    }
    if (*bench) {
      noma::ScenarioConfig cfg = load_config(bench_config, bench_overrides, bench);
      std::vector<noma::BenchRow> rows = noma::run_bench(cfg, bench_reps);
      noma::write_file(bench_out, noma::bench_to_csv(rows));
      std::fprintf(stderr, "wrote %zu timing rows to %s\n", rows.size(), bench_out.c_str());
      return 0;
    }
    if (*figures) {
      std::vector<std::string> ids =
          fig_only.empty() ? noma::figure_ids() : std::vector<std::string>{fig_only};
      for (const std::string& id : ids) {
        noma::FigureSpec spec = noma::figure_preset(id, fig_trials);
        noma::FigureOutput out = noma::run_figure(spec, fig_dir);
        for (const std::string& f : out.files) std::fprintf(stderr, "wrote %s\n", f.c_str());
      }
      return 0;
    }
  } catch (const noma::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime failure: %s\n", e.what());
    return 3;
  }
  return 0;
}

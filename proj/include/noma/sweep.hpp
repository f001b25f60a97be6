#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "noma/metrics.hpp"
#include "noma/scenario.hpp"

namespace noma {

// One trial outcome. runtime_ms is reserved and written as 0 in raw rows so
// that identical configs reproduce byte-identical CSVs; measured timings are
// reported in the sweep summary and by the bench subcommand.
struct ResultRow {
  std::string algorithm;
  int n_users = 0;
  int n_clusters = 0;
  int trial = 0;
  int served_users = 0;
  double total_power_w = 0.0;
  double sum_rate_bps = 0.0;
  double energy_efficiency_bpj = 0.0;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
};

struct SweepPointSummary {
  std::string algorithm;
  int n_users = 0;
  int n_clusters = 0;
  int trials = 0;
  double served_mean = 0.0, served_se = 0.0;
  double total_power_mean_w = 0.0, total_power_se_w = 0.0;
  double sum_rate_mean_bps = 0.0, sum_rate_se_bps = 0.0;
  double energy_efficiency_mean_bpj = 0.0, energy_efficiency_se_bpj = 0.0;
  double runtime_mean_ms = 0.0;
};

struct SweepResult {
  std::vector<ResultRow> rows;
  std::vector<SweepPointSummary> summaries;
};

struct TrialOutcome {
  ResultRow row;
  ClusteringResult result;
  MetricsRecord metrics;
  double measured_runtime_ms = 0.0;
};

// Runs one trial of the configured algorithm at a sweep point. The trial
// seed is a pure function of (config seed, sweep_index, trial_index); the
// channel draw depends only on it, so all algorithms see identical channels
// for the same trial.
TrialOutcome run_trial(const ScenarioConfig& cfg, int n_users, int rf_chains, int sweep_index,
                       int trial_index);

// Full sweep over the n_users x n_rf_chains grid. Worker count is capped by
// the NOMA_LAB_THREADS environment variable; output order is independent of
// it. Degenerate points (kuc with n_users < n_rf_chains) are skipped.
SweepResult run_sweep(const ScenarioConfig& cfg);

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string summaries_to_csv(const std::vector<SweepPointSummary>& summaries);
void write_file(const std::string& path, const std::string& content);

// Worker cap from NOMA_LAB_THREADS (>= 1); throws ConfigError on garbage.
int worker_threads();

}  // namespace noma

#pragma once

#include <string>
#include <vector>

#include "noma/scenario.hpp"

namespace noma {

struct BenchRow {
  std::string algorithm;
  int n_users = 0;
  int n_clusters = 0;
  int reps = 0;
  double median_ms = 0.0;
};

// Times every algorithm over the config's n_users x n_rf_chains grid,
// single-threaded, reporting the median of `reps` wall-clock runs on fresh
// channel draws. Degenerate points (kuc with n_users < n_rf_chains) are
// skipped.
std::vector<BenchRow> run_bench(const ScenarioConfig& cfg, int reps = 5);

std::string bench_to_csv(const std::vector<BenchRow>& rows);

}  // namespace noma

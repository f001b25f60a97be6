#include "noma/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "noma/channel.hpp"
#include "noma/clustering.hpp"
#include "noma/collinearity.hpp"
#include "noma/rng.hpp"

namespace noma {

std::vector<BenchRow> run_bench(const ScenarioConfig& cfg, int reps) {
  cfg.validate();
  if (reps < 1) reps = 1;

  static constexpr Algorithm kAll[] = {Algorithm::kNearFar, Algorithm::kCorrPair,
                                       Algorithm::kRandom,  Algorithm::kCia,
                                       Algorithm::kKuc,     Algorithm::kGwo};
  std::vector<BenchRow> rows;
  int sweep_index = 0;
  for (int n_users : cfg.n_users) {
    for (int rf_chains : cfg.n_rf_chains) {
      for (Algorithm alg : kAll) {
        if (alg == Algorithm::kKuc && n_users < rf_chains) continue;
        std::vector<double> times;
        times.reserve(static_cast<std::size_t>(reps));
        for (int r = 0; r < reps; ++r) {
          const std::uint64_t seed = trial_seed(cfg.seed, sweep_index, r);
          ChannelSet channels = generate_channels(cfg.channel_params(rf_chains, seed), n_users);
          SystemConfig sys = cfg.system_config(rf_chains);
          AlgorithmOptions opts = cfg.algorithm_options(seed);
          auto t0 = std::chrono::steady_clock::now();
          CollinearityMatrix c = collinearity(channels);
          ClusteringResult result = run_algorithm(alg, channels, c, sys, opts);
          auto t1 = std::chrono::steady_clock::now();
          (void)result;
          times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
        std::sort(times.begin(), times.end());
        double median = times.size() % 2 == 1
                            ? times[times.size() / 2]
                            : 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);
        rows.push_back({algorithm_name(alg), n_users, rf_chains, reps, median});
      }
      ++sweep_index;
    }
  }
  return rows;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
  std::string out = "algorithm,n_users,n_clusters,reps,median_ms\n";
  for (const BenchRow& r : rows) {
    out += r.algorithm;
    out += ',' + std::to_string(r.n_users);
    out += ',' + std::to_string(r.n_clusters);
    out += ',' + std::to_string(r.reps);
    char buf[32];
    snprintf(buf, sizeof buf, "%.3f", r.median_ms);
    out += ',';
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace noma

#include "noma/sweep.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "noma/channel.hpp"
#include "noma/clustering.hpp"
#include "noma/collinearity.hpp"
#include "noma/rng.hpp"

namespace noma {
namespace {

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool skip_point(Algorithm alg, int n_users, int rf_chains) {
  return alg == Algorithm::kKuc && n_users < rf_chains;
}

}  // namespace

int worker_threads() {
  const char* env = std::getenv("NOMA_LAB_THREADS");
  unsigned hw = std::thread::hardware_concurrency();
  int fallback = hw == 0 ? 1 : static_cast<int>(hw);
  if (env == nullptr || *env == '\0') return fallback;
  int value = 0;
  auto res = std::from_chars(env, env + std::char_traits<char>::length(env), value);
  if (res.ec != std::errc{} || *res.ptr != '\0' || value < 1)
    throw ConfigError("NOMA_LAB_THREADS must be a positive integer, got '" + std::string(env) +
                      "'");
  return value;
}

TrialOutcome run_trial(const ScenarioConfig& cfg, int n_users, int rf_chains, int sweep_index,
                       int trial_index) {
  const std::uint64_t seed = trial_seed(cfg.seed, sweep_index, trial_index);
  ChannelSet channels = generate_channels(cfg.channel_params(rf_chains, seed), n_users);
  SystemConfig sys = cfg.system_config(rf_chains);
  AlgorithmOptions opts = cfg.algorithm_options(seed);

  auto t0 = std::chrono::steady_clock::now();
  CollinearityMatrix c = collinearity(channels);
  ClusteringResult result = run_algorithm(cfg.algorithm, channels, c, sys, opts);
  auto t1 = std::chrono::steady_clock::now();
  double elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  TrialOutcome out;
  out.metrics = compute_metrics(result.assignment, result.solution, cfg.bandwidth_hz);
  out.result = std::move(result);
  out.measured_runtime_ms = elapsed_ms;
  out.row.algorithm = algorithm_name(cfg.algorithm);
  out.row.n_users = n_users;
  out.row.n_clusters = rf_chains;
  out.row.trial = trial_index;
  out.row.served_users = out.metrics.served_users;
  out.row.total_power_w = out.metrics.total_power_w;
  out.row.sum_rate_bps = out.metrics.sum_rate_bps;
  out.row.energy_efficiency_bpj = out.metrics.energy_efficiency_bpj;
  out.row.runtime_ms = 0.0;
  out.row.seed = seed;
  return out;
}

SweepResult run_sweep(const ScenarioConfig& cfg) {
  cfg.validate();

  struct Job {
    int n_users, rf_chains, sweep_index, trial_index;
  };
  std::vector<Job> jobs;
  const int n_chain_values = static_cast<int>(cfg.n_rf_chains.size());
  for (std::size_t ui = 0; ui < cfg.n_users.size(); ++ui) {
    for (std::size_t mi = 0; mi < cfg.n_rf_chains.size(); ++mi) {
      int sweep_index = static_cast<int>(ui) * n_chain_values + static_cast<int>(mi);
      if (skip_point(cfg.algorithm, cfg.n_users[ui], cfg.n_rf_chains[mi])) continue;
      for (int t = 0; t < cfg.trials; ++t)
        jobs.push_back({cfg.n_users[ui], cfg.n_rf_chains[mi], sweep_index, t});
    }
  }

  std::vector<ResultRow> rows(jobs.size());
  std::vector<double> runtimes(jobs.size(), 0.0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load()) return;
      try {
        TrialOutcome out =
            run_trial(cfg, jobs[i].n_users, jobs[i].rf_chains, jobs[i].sweep_index,
                      jobs[i].trial_index);
        rows[i] = std::move(out.row);
        runtimes[i] = out.measured_runtime_ms;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) error_message = e.what();
        return;
      }
    }
  };

  int n_threads = std::min<int>(worker_threads(), static_cast<int>(jobs.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("sweep trial failed: " + error_message);

  SweepResult result;
  result.rows = std::move(rows);

  // Aggregate per sweep point; jobs are grouped by point in row-major order.
  std::size_t i = 0;
  while (i < result.rows.size()) {
    std::size_t j = i;
    while (j < result.rows.size() && result.rows[j].n_users == result.rows[i].n_users &&
           result.rows[j].n_clusters == result.rows[i].n_clusters)
      ++j;
    SweepPointSummary s;
    s.algorithm = result.rows[i].algorithm;
    s.n_users = result.rows[i].n_users;
    s.n_clusters = result.rows[i].n_clusters;
    s.trials = static_cast<int>(j - i);
    auto mean_se = [&](auto getter, double& mean, double& se) {
      double sum = 0.0;
      for (std::size_t k = i; k < j; ++k) sum += getter(result.rows[k]);
      mean = sum / static_cast<double>(s.trials);
      double ss = 0.0;
      for (std::size_t k = i; k < j; ++k) {
        double d = getter(result.rows[k]) - mean;
        ss += d * d;
      }
      se = s.trials > 1 ? std::sqrt(ss / (static_cast<double>(s.trials) - 1.0) /
                                    static_cast<double>(s.trials))
                        : 0.0;
    };
    mean_se([](const ResultRow& r) { return static_cast<double>(r.served_users); }, s.served_mean,
            s.served_se);
    mean_se([](const ResultRow& r) { return r.total_power_w; }, s.total_power_mean_w,
            s.total_power_se_w);
    mean_se([](const ResultRow& r) { return r.sum_rate_bps; }, s.sum_rate_mean_bps,
            s.sum_rate_se_bps);
    mean_se([](const ResultRow& r) { return r.energy_efficiency_bpj; },
            s.energy_efficiency_mean_bpj, s.energy_efficiency_se_bpj);
    double rt = 0.0;
    for (std::size_t k = i; k < j; ++k) rt += runtimes[k];
    s.runtime_mean_ms = rt / static_cast<double>(s.trials);
    result.summaries.push_back(std::move(s));
    i = j;
  }
  return result;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::string out =
      "algorithm,n_users,n_clusters,trial,served_users,total_power_w,sum_rate_bps,"
      "energy_efficiency_bpj,runtime_ms,seed\n";
  for (const ResultRow& r : rows) {
    out += r.algorithm;
    out += ',' + std::to_string(r.n_users);
    out += ',' + std::to_string(r.n_clusters);
    out += ',' + std::to_string(r.trial);
    out += ',' + std::to_string(r.served_users);
    out += ',' + fmt_double(r.total_power_w);
    out += ',' + fmt_double(r.sum_rate_bps);
    out += ',' + fmt_double(r.energy_efficiency_bpj);
    out += ',' + fmt_double(r.runtime_ms);
    out += ',' + std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::string summaries_to_csv(const std::vector<SweepPointSummary>& summaries) {
  std::string out =
      "algorithm,n_users,n_clusters,trials,served_mean,served_se,total_power_mean_w,"
      "total_power_se_w,sum_rate_mean_bps,sum_rate_se_bps,energy_efficiency_mean_bpj,"
      "energy_efficiency_se_bpj,runtime_mean_ms\n";
  for (const SweepPointSummary& s : summaries) {
    out += s.algorithm;
    out += ',' + std::to_string(s.n_users);
    out += ',' + std::to_string(s.n_clusters);
    out += ',' + std::to_string(s.trials);
    out += ',' + fmt_double(s.served_mean);
    out += ',' + fmt_double(s.served_se);
    out += ',' + fmt_double(s.total_power_mean_w);
    out += ',' + fmt_double(s.total_power_se_w);
    out += ',' + fmt_double(s.sum_rate_mean_bps);
    out += ',' + fmt_double(s.sum_rate_se_bps);
    out += ',' + fmt_double(s.energy_efficiency_mean_bpj);
    out += ',' + fmt_double(s.energy_efficiency_se_bpj);
    out += ',' + fmt_double(s.runtime_mean_ms);
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace noma

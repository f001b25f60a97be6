#include "noma/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace noma {

std::vector<double> user_rates(const ClusterAssignment& assignment,
                               const PowerSolution& solution, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("user_rates: bandwidth must be > 0");
  std::vector<double> rates(assignment.n_users, 0.0);
  for (const auto& cl : assignment.clusters)
    for (int u : cl) rates[u] = bandwidth_hz * std::log2(1.0 + solution.achieved_sinr[u]);
  return rates;
}

double energy_efficiency(double sum_rate_bps, double total_power_w) {
  if (!(total_power_w > 0.0)) return 0.0;
  return sum_rate_bps / total_power_w;
}

MetricsRecord compute_metrics(const ClusterAssignment& assignment,
                              const PowerSolution& solution, double bandwidth_hz) {
  MetricsRecord rec;
  rec.rate_bps = user_rates(assignment, solution, bandwidth_hz);
  rec.served_users = assignment.served_count();
  rec.total_power_w = solution.total;
  for (double r : rec.rate_bps) rec.sum_rate_bps += r;
  rec.zero_power = !(solution.total > 0.0);
  rec.energy_efficiency_bpj = energy_efficiency(rec.sum_rate_bps, rec.total_power_w);
  return rec;
}

}  // namespace noma

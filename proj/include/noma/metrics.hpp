#pragma once

#include <vector>

#include "noma/assignment.hpp"
#include "noma/power.hpp"

namespace noma {

struct MetricsRecord {
  int served_users = 0;
  double total_power_w = 0.0;
  double sum_rate_bps = 0.0;
  double energy_efficiency_bpj = 0.0;
  std::vector<double> rate_bps;  // per user, 0 when unserved
  bool zero_power = false;       // efficiency reported as 0 by convention
};

// Shannon rate per user: bandwidth * log2(1 + achieved SINR), 0 for
// unserved users.
std::vector<double> user_rates(const ClusterAssignment& assignment,
                               const PowerSolution& solution, double bandwidth_hz);

// Sum rate over consumed power; 0 when nothing is served.
double energy_efficiency(double sum_rate_bps, double total_power_w);

MetricsRecord compute_metrics(const ClusterAssignment& assignment,
                              const PowerSolution& solution, double bandwidth_hz);

}  // namespace noma

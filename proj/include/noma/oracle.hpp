#pragma once

#include <cstdint>
#include <string>

#include "noma/assignment.hpp"
#include "noma/power.hpp"

namespace noma {

// Fixed-point solution of the coupled minimum-power system: starting from
// zero inter-cluster interference, repeatedly solve every cluster's power
// recursion against the other clusters' current totals until the totals
// stop moving. Converges exactly when the coupled system is feasible, so it
// serves as an independent reference for the closed-form solver.
struct FixedPointResult {
  bool converged = false;
  bool diverged = false;
  int iterations = 0;
  double total = 0.0;
  std::vector<double> cluster_total;
};

FixedPointResult fixed_point_p_min(const ClusterAssignment& assignment, const SinrModel& model,
                                   double tol = 1e-10, int max_iters = 200000,
                                   double divergence_bound = 1e12);

struct OracleOptions {
  int instances = 2000;
  int max_clusters = 3;
  int max_users = 6;
  std::uint64_t seed = 1;
};

struct OracleReport {
  int instances = 0;
  int feasible = 0;
  int infeasible = 0;
  int regenerated = 0;  // near-boundary draws discarded before comparison
  int feasibility_mismatches = 0;
  double max_rel_deviation = 0.0;          // closed form vs fixed point
  double max_uniform_rel_deviation = 0.0;  // per-user recursion vs uniform form
  bool ok = false;
  std::string detail;
};

// Cross-checks the closed-form minimum-power solver against the fixed-point
// reference on randomized small instances. Bounds checked: relative total
// deviation <= 1e-6, coefficient-path agreement <= 1e-9, and exact
// feasible/infeasible agreement.
OracleReport run_oracle(const OracleOptions& options);

std::string oracle_report_text(const OracleReport& report);

}  // namespace noma

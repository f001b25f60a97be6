#pragma once

#include <vector>

#include "noma/assignment.hpp"

namespace noma {

// Per-user SINR model inputs, indexed by global user id. gamma_th is the
// linear (not dB) target, c the collinearity to the user's cluster
// representative, g the squared beam gain |h^T w|^2, sigma2 the noise power
// in watts. Entries of unserved users are ignored.
struct SinrModel {
  std::vector<double> gamma_th;
  std::vector<double> c;
  std::vector<double> g;
  double sigma2 = 0.0;
};

// Decoding position n of a cluster sees intra-cluster interference from the
// members decoded before it and inter-cluster interference from the total
// power of every other cluster, scaled by (1-c)/c of its own alignment:
//
//   sinr_n = c_n p_n g_n / (sigma2 + c_n g_n sum_{j<n} p_j
//                                  + (1-c_n) g_n P_inter)
//
// Meeting gamma_th with equality gives the minimum-power recursion
//
//   p_n = gamma_n sigma2/(c_n g_n) + gamma_n sum_{j<n} p_j
//       + gamma_n (1-c_n)/c_n * P_inter
//
// which is affine in P_inter: summing over a cluster yields a required
// budget A_k = alpha_k + beta_k * P_inter(k). With P_inter(k) equal to the
// total power of the other clusters, the coupled system solves in closed
// form and is feasible if and only if 1 - sum_k beta_k/(1+beta_k) > 0.

struct ClusterPowerCoefficients {
  std::vector<double> alpha;  // watts required at zero inter-cluster power
  std::vector<double> beta;   // unitless inter-cluster sensitivity
};

struct PowerSolution {
  std::vector<double> p;              // per-user watts, 0 when unserved
  std::vector<double> cluster_total;  // A_k per cluster slot
  double total = 0.0;
  double p_min_total = 0.0;
  bool system_feasible = false;  // closed-form denominator positive, finite
  bool feasible = false;         // system_feasible and total <= budget
  std::vector<double> achieved_sinr;
  ClusterPowerCoefficients coeffs;
};

// Achieved SINR of user u under powers p (exact model above).
double sinr(int u, const std::vector<double>& p, const ClusterAssignment& assignment,
            const SinrModel& model);

// Minimum powers per cluster member given a fixed inter-cluster power per
// cluster; the order inside each cluster list is the decoding order.
std::vector<double> calcul_p(const ClusterAssignment& assignment, const SinrModel& model,
                             const std::vector<double>& inter_cluster_power);

// alpha/beta by the exact per-user-threshold recursion.
ClusterPowerCoefficients cluster_power_coefficients(const ClusterAssignment& assignment,
                                                    const SinrModel& model);

// alpha/beta by the explicit uniform-threshold double sums (powers of
// 1+gamma). Must agree with the recursion when all thresholds equal gamma.
ClusterPowerCoefficients cluster_power_coefficients_uniform(
    const ClusterAssignment& assignment, const SinrModel& model, double gamma);

// Closed-form minimum total power and the per-user powers realizing it.
// Picks the uniform fast path when all served thresholds are equal.
// result.feasible is left false; stamp it against a budget with test_p.
PowerSolution p_min_closed_form(const ClusterAssignment& assignment, const SinrModel& model);

// True iff the closed form was feasible and the total fits the budget.
bool test_p(const PowerSolution& solution, double p_max);

// One redistribution step of the iterative power control: each cluster's
// budget moves to (residual - own slack)/(m-1) + own minimum. Preserves the
// total budget; with one cluster the input is returned unchanged.
struct PowerControlState {
  std::vector<double> p_max_vec;
  std::vector<double> p_min_vec;
};
std::vector<double> power_control_step(const PowerControlState& state);

struct PowerControlOptions {
  int max_iters = 50;
  double tol_w = 1e-6;
};

// Iterates closed-form allocation and budget redistribution from a uniform
// split of p_max until the budgets settle. Returns the final allocation with
// achieved SINRs recomputed through sinr().
PowerSolution run_power_control(const ClusterAssignment& assignment, const SinrModel& model,
                                double p_max, const PowerControlOptions& options = {});

}  // namespace noma

#include "noma/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace noma {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void check_model(const ClusterAssignment& assignment, const SinrModel& model) {
  const int n = assignment.n_users;
  if (static_cast<int>(model.gamma_th.size()) != n || static_cast<int>(model.c.size()) != n ||
      static_cast<int>(model.g.size()) != n)
    throw std::invalid_argument("SinrModel: vectors must have one entry per user");
  if (!(model.sigma2 > 0.0)) throw std::invalid_argument("SinrModel: sigma2 must be > 0");
  for (const auto& cl : assignment.clusters)
    for (int u : cl) {
      if (!(model.gamma_th[u] > 0.0))
        throw std::invalid_argument("SinrModel: gamma_th must be > 0 for served users");
      if (!(model.c[u] > 0.0) || model.c[u] > 1.0)
        throw std::invalid_argument("SinrModel: c must be in (0,1] for served users");
      if (!(model.g[u] >= 0.0)) throw std::invalid_argument("SinrModel: g must be >= 0");
    }
}

}  // namespace

double sinr(int u, const std::vector<double>& p, const ClusterAssignment& assignment,
            const SinrModel& model) {
  const auto owner = assignment.cluster_of();
  const int k = owner[u];
  if (k < 0) return 0.0;

  std::vector<double> cluster_total(assignment.clusters.size(), 0.0);
  double total = 0.0;
  for (std::size_t m = 0; m < assignment.clusters.size(); ++m) {
    for (int v : assignment.clusters[m]) cluster_total[m] += p[v];
    total += cluster_total[m];
  }

  double intra = 0.0;
  for (int v : assignment.clusters[k]) {
    if (v == u) break;
    intra += p[v];
  }
  const double inter = total - cluster_total[k];
  const double cu = model.c[u];
  const double gu = model.g[u];
  const double denom = model.sigma2 + cu * gu * intra + (1.0 - cu) * gu * inter;
  return cu * p[u] * gu / denom;
}

std::vector<double> calcul_p(const ClusterAssignment& assignment, const SinrModel& model,
                             const std::vector<double>& inter_cluster_power) {
  check_model(assignment, model);
  if (inter_cluster_power.size() != assignment.clusters.size())
    throw std::invalid_argument("calcul_p: one inter-cluster power per cluster expected");

  std::vector<double> p(assignment.n_users, 0.0);
  for (std::size_t k = 0; k < assignment.clusters.size(); ++k) {
    double stack = 0.0;  // sum of powers decoded before the current member
    for (int u : assignment.clusters[k]) {
      const double gth = model.gamma_th[u];
      const double cu = model.c[u];
      const double gu = model.g[u];
      double pu = gth * model.sigma2 / (cu * gu) + gth * stack +
                  gth * (1.0 - cu) / cu * inter_cluster_power[k];
      p[u] = pu;
      stack += pu;
    }
  }
  return p;
}

ClusterPowerCoefficients cluster_power_coefficients(const ClusterAssignment& assignment,
                                                    const SinrModel& model) {
  check_model(assignment, model);
  ClusterPowerCoefficients out;
  out.alpha.assign(assignment.clusters.size(), 0.0);
  out.beta.assign(assignment.clusters.size(), 0.0);
  for (std::size_t k = 0; k < assignment.clusters.size(); ++k) {
    double sum_a = 0.0, sum_b = 0.0;  // running prefix sums of the recursion
    for (int u : assignment.clusters[k]) {
      const double gth = model.gamma_th[u];
      const double a = gth * model.sigma2 / (model.c[u] * model.g[u]) + gth * sum_a;
      const double b = gth * (1.0 - model.c[u]) / model.c[u] + gth * sum_b;
      sum_a += a;
      sum_b += b;
    }
    out.alpha[k] = sum_a;
    out.beta[k] = sum_b;
  }
  return out;
}

ClusterPowerCoefficients cluster_power_coefficients_uniform(
    const ClusterAssignment& assignment, const SinrModel& model, double gamma) {
  check_model(assignment, model);
  if (!(gamma > 0.0))
    throw std::invalid_argument("cluster_power_coefficients_uniform: gamma must be > 0");

  ClusterPowerCoefficients out;
  out.alpha.assign(assignment.clusters.size(), 0.0);
  out.beta.assign(assignment.clusters.size(), 0.0);
  for (std::size_t k = 0; k < assignment.clusters.size(); ++k) {
    const auto& cl = assignment.clusters[k];
    const int n = static_cast<int>(cl.size());
    double alpha = 0.0, beta = 0.0;
    for (int i = 0; i < n; ++i) {
      const double noise_i = model.sigma2 / (model.c[cl[i]] * model.g[cl[i]]);
      const double leak_i = (1.0 - model.c[cl[i]]) / model.c[cl[i]];
      alpha += gamma * noise_i;
      beta += gamma * leak_i;
      for (int j = 0; j < i; ++j) {
        const double w = std::pow(1.0 + gamma, i - j - 1);
        alpha += gamma * gamma * w * model.sigma2 / (model.c[cl[j]] * model.g[cl[j]]);
        beta += gamma * gamma * w * (1.0 - model.c[cl[j]]) / model.c[cl[j]];
      }
    }
    out.alpha[k] = alpha;
    out.beta[k] = beta;
  }
  return out;
}

PowerSolution p_min_closed_form(const ClusterAssignment& assignment, const SinrModel& model) {
  check_model(assignment, model);
  PowerSolution sol;
  sol.p.assign(assignment.n_users, 0.0);
  sol.cluster_total.assign(assignment.clusters.size(), 0.0);
  sol.achieved_sinr.assign(assignment.n_users, 0.0);

  if (assignment.served_count() == 0) {
    sol.coeffs.alpha.assign(assignment.clusters.size(), 0.0);
    sol.coeffs.beta.assign(assignment.clusters.size(), 0.0);
    sol.system_feasible = true;
    return sol;
  }

  bool uniform = true;
  double gamma = -1.0;
  for (const auto& cl : assignment.clusters)
    for (int u : cl) {
      if (gamma < 0.0) gamma = model.gamma_th[u];
      if (model.gamma_th[u] != gamma) uniform = false;
    }

  sol.coeffs = uniform ? cluster_power_coefficients_uniform(assignment, model, gamma)
                       : cluster_power_coefficients(assignment, model);
  if (!all_finite(sol.coeffs.alpha) || !all_finite(sol.coeffs.beta)) return sol;

  double num = 0.0, den = 1.0;
  for (std::size_t k = 0; k < sol.coeffs.alpha.size(); ++k) {
    num += sol.coeffs.alpha[k] / (1.0 + sol.coeffs.beta[k]);
    den -= sol.coeffs.beta[k] / (1.0 + sol.coeffs.beta[k]);
  }
  if (!(den > 0.0) || !std::isfinite(num)) return sol;

  sol.system_feasible = true;
  sol.p_min_total = num / den;
  sol.total = sol.p_min_total;

  std::vector<double> inter(assignment.clusters.size(), 0.0);
  for (std::size_t k = 0; k < assignment.clusters.size(); ++k) {
    sol.cluster_total[k] = (sol.coeffs.alpha[k] + sol.coeffs.beta[k] * sol.p_min_total) /
                           (1.0 + sol.coeffs.beta[k]);
    inter[k] = sol.p_min_total - sol.cluster_total[k];
  }
  sol.p = calcul_p(assignment, model, inter);
  for (const auto& cl : assignment.clusters)
    for (int u : cl) sol.achieved_sinr[u] = sinr(u, sol.p, assignment, model);
  return sol;
}

bool test_p(const PowerSolution& solution, double p_max) {
  return solution.system_feasible && std::isfinite(solution.total) && solution.total <= p_max;
}

std::vector<double> power_control_step(const PowerControlState& state) {
  const std::size_t m = state.p_max_vec.size();
  if (state.p_min_vec.size() != m)
    throw std::invalid_argument("power_control_step: budget and minimum sizes differ");
  if (m <= 1) return state.p_max_vec;

  double residual = 0.0;
  for (std::size_t i = 0; i < m; ++i) residual += state.p_max_vec[i] - state.p_min_vec[i];

  std::vector<double> next(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double slack = state.p_max_vec[i] - state.p_min_vec[i];
    next[i] = (residual - slack) / static_cast<double>(m - 1) + state.p_min_vec[i];
  }
  return next;
}

PowerSolution run_power_control(const ClusterAssignment& assignment, const SinrModel& model,
                                double p_max, const PowerControlOptions& options) {
  PowerSolution sol = p_min_closed_form(assignment, model);
  sol.feasible = test_p(sol, p_max);
  if (!sol.system_feasible) return sol;

  const std::size_t m = assignment.clusters.size();
  if (m >= 1) {
    PowerControlState state;
    state.p_max_vec.assign(m, p_max / static_cast<double>(m));
    state.p_min_vec = sol.cluster_total;
    for (int it = 0; it < options.max_iters; ++it) {
      std::vector<double> next = power_control_step(state);
      double delta = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        delta = std::max(delta, std::abs(next[i] - state.p_max_vec[i]));
      state.p_max_vec = std::move(next);
      if (delta < options.tol_w) break;
    }
  }
  return sol;
}

}  // namespace noma

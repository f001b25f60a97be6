#include "noma/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace noma {

FixedPointResult fixed_point_p_min(const ClusterAssignment& assignment, const SinrModel& model,
                                   double tol, int max_iters, double divergence_bound) {
  const std::size_t slots = assignment.clusters.size();
  FixedPointResult res;
  res.cluster_total.assign(slots, 0.0);
  std::vector<double> inter(slots, 0.0), next(slots, 0.0);

  for (int iter = 1; iter <= max_iters; ++iter) {
    double total = 0.0;
    for (double a : res.cluster_total) total += a;
    for (std::size_t k = 0; k < slots; ++k) inter[k] = total - res.cluster_total[k];
    std::vector<double> p = calcul_p(assignment, model, inter);

    double delta = 0.0, new_total = 0.0;
    bool finite = true;
    for (std::size_t k = 0; k < slots; ++k) {
      double a = 0.0;
      for (int u : assignment.clusters[k]) a += p[u];
      if (!std::isfinite(a)) finite = false;
      next[k] = a;
      delta = std::max(delta, std::abs(a - res.cluster_total[k]));
      new_total += a;
    }
    res.cluster_total = next;
    res.total = new_total;
    res.iterations = iter;
    if (!finite || new_total > divergence_bound) {
      res.diverged = true;
      return res;
    }
    if (delta <= tol * std::max(1.0, new_total)) {
      res.converged = true;
      return res;
    }
  }
  return res;  // undecided: hit max_iters near the feasibility boundary
}

namespace {

struct Instance {
  ClusterAssignment assignment;
  SinrModel model;
  bool uniform = false;
  double gamma_common = 0.0;
};

Instance draw_instance(std::mt19937_64& rng, const OracleOptions& opt) {
  std::uniform_int_distribution<int> cluster_dist(1, opt.max_clusters);
  Instance inst;
  const int m = cluster_dist(rng);
  const int n = std::uniform_int_distribution<int>(1, opt.max_users)(rng);
  inst.assignment.n_users = n;
  inst.assignment.clusters.assign(m, {});
  std::uniform_int_distribution<int> slot_dist(0, m - 1);
  for (int u = 0; u < n; ++u) inst.assignment.clusters[slot_dist(rng)].push_back(u);

  // Occasionally park one user as unserved; its model entries must be inert.
  if (n >= 2 && std::uniform_real_distribution<double>(0.0, 1.0)(rng) < 0.1) {
    for (auto& cl : inst.assignment.clusters) {
      if (!cl.empty()) {
        inst.assignment.unserved.push_back(cl.back());
        cl.pop_back();
        break;
      }
    }
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  inst.model.sigma2 = std::pow(10.0, -4.0 + 3.0 * unit(rng));
  inst.model.gamma_th.resize(n);
  inst.model.c.resize(n);
  inst.model.g.resize(n);
  inst.uniform = unit(rng) < 0.5;
  inst.gamma_common = std::pow(10.0, std::uniform_real_distribution<double>(0.0, 12.0)(rng) / 10.0);
  for (int u = 0; u < n; ++u) {
    inst.model.c[u] = 0.5 + 0.5 * unit(rng);
    inst.model.g[u] = std::pow(10.0, -1.3 + 2.6 * unit(rng));
    inst.model.gamma_th[u] =
        inst.uniform ? inst.gamma_common
                     : std::pow(10.0, std::uniform_real_distribution<double>(0.0, 12.0)(rng) / 10.0);
  }
  return inst;
}

// Closed-form feasibility margin; instances too close to the boundary are
// redrawn because the fixed point's convergence rate degenerates there.
bool near_boundary(const ClusterPowerCoefficients& coeffs, double margin) {
  double den = 1.0;
  for (double b : coeffs.beta) {
    if (!std::isfinite(b)) return false;  // closed form already infeasible
    den -= b / (1.0 + b);
  }
  return std::abs(den) < margin;
}

}  // namespace

OracleReport run_oracle(const OracleOptions& options) {
  OracleReport rep;
  std::mt19937_64 rng(options.seed);
  int undecided_infeasible = 0;

  while (rep.instances < options.instances) {
    Instance inst = draw_instance(rng, options);
    PowerSolution cf = p_min_closed_form(inst.assignment, inst.model);
    if (near_boundary(cf.coeffs, 1e-3)) {
      ++rep.regenerated;
      continue;
    }
    ++rep.instances;

    FixedPointResult fp = fixed_point_p_min(inst.assignment, inst.model);
    if (cf.system_feasible) {
      ++rep.feasible;
      if (!fp.converged) {
        ++rep.feasibility_mismatches;
      } else {
        double rel = std::abs(cf.p_min_total - fp.total) / std::max(cf.p_min_total, 1e-30);
        rep.max_rel_deviation = std::max(rep.max_rel_deviation, rel);
        for (std::size_t k = 0; k < cf.cluster_total.size(); ++k) {
          if (cf.cluster_total[k] <= 1e-9) continue;
          double rk = std::abs(cf.cluster_total[k] - fp.cluster_total[k]) / cf.cluster_total[k];
          rep.max_rel_deviation = std::max(rep.max_rel_deviation, rk);
        }
      }
    } else {
      ++rep.infeasible;
      if (fp.converged)
        ++rep.feasibility_mismatches;
      else if (!fp.diverged)
        ++undecided_infeasible;
    }

    if (inst.uniform) {
      ClusterPowerCoefficients exact = cluster_power_coefficients(inst.assignment, inst.model);
      ClusterPowerCoefficients uni =
          cluster_power_coefficients_uniform(inst.assignment, inst.model, inst.gamma_common);
      for (std::size_t k = 0; k < exact.alpha.size(); ++k) {
        if (!std::isfinite(exact.alpha[k]) || !std::isfinite(exact.beta[k])) continue;
        double ra = std::abs(exact.alpha[k] - uni.alpha[k]) / std::max(exact.alpha[k], 1e-30);
        double rb = std::abs(exact.beta[k] - uni.beta[k]) / std::max(exact.beta[k], 1e-30);
        rep.max_uniform_rel_deviation =
            std::max({rep.max_uniform_rel_deviation, ra, rb});
      }
    }
  }

  rep.ok = rep.feasibility_mismatches == 0 && rep.max_rel_deviation <= 1e-6 &&
           rep.max_uniform_rel_deviation <= 1e-9;
  std::ostringstream detail;
  detail << "undecided_infeasible=" << undecided_infeasible;
  rep.detail = detail.str();
  return rep;
}

std::string oracle_report_text(const OracleReport& report) {
  std::ostringstream os;
  os << "oracle instances: " << report.instances << " (feasible " << report.feasible
     << ", infeasible " << report.infeasible << ", regenerated near boundary "
     << report.regenerated << ")\n";
  os << "max relative deviation closed-form vs fixed-point: " << report.max_rel_deviation
     << " (bound 1e-6)\n";
  os << "max relative deviation recursion vs uniform form: " << report.max_uniform_rel_deviation
     << " (bound 1e-9)\n";
  os << "feasibility mismatches: " << report.feasibility_mismatches << " (" << report.detail
     << ")\n";
  os << (report.ok ? "ORACLE OK" : "ORACLE DEVIATION") << "\n";
  return os.str();
}

}  // namespace noma

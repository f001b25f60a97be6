#include "noma/evaluate.hpp"

#include <algorithm>
#include <stdexcept>

namespace noma {

EvaluatedAssignment evaluate_assignment(const ChannelSet& channels,
                                        const CollinearityMatrix& c,
                                        ClusterAssignment assignment,
                                        const SystemConfig& sys) {
  if (sys.gamma_th_linear.empty())
    throw std::invalid_argument("SystemConfig: gamma_th_linear must not be empty");
  assignment.validate(sys.n_rf_chains);

  EvaluatedAssignment out;
  out.assignment = std::move(assignment);
  out.model.sigma2 = sys.noise_power_w;
  out.model.gamma_th.resize(out.assignment.n_users);
  out.model.c.assign(out.assignment.n_users, 1.0);
  out.model.g.assign(out.assignment.n_users, 0.0);
  for (int u = 0; u < out.assignment.n_users; ++u) out.model.gamma_th[u] = sys.gamma_for(u);
  out.solution.p.assign(out.assignment.n_users, 0.0);
  out.solution.achieved_sinr.assign(out.assignment.n_users, 0.0);

  if (out.assignment.served_count() == 0) {
    out.solution = p_min_closed_form(out.assignment, out.model);
    out.solution.feasible = test_p(out.solution, sys.p_max_w);
    out.ok = out.solution.feasible;
    return out;
  }

  out.representatives = select_representatives(out.assignment, c);

  // Stack non-empty clusters' representative channels as rows.
  std::vector<int> live;
  for (std::size_t k = 0; k < out.assignment.clusters.size(); ++k)
    if (!out.assignment.clusters[k].empty()) live.push_back(static_cast<int>(k));
  Eigen::MatrixXcd h_rep(live.size(), channels.params.n_tx_antennas);
  for (std::size_t r = 0; r < live.size(); ++r)
    h_rep.row(r) = channels.h[out.representatives[live[r]]].transpose();

  out.beams = zf_precode(h_rep);
  if (!out.beams) return out;  // representatives not resolvable

  for (std::size_t r = 0; r < live.size(); ++r) {
    const int k = live[r];
    const int rep = out.representatives[k];
    for (int u : out.assignment.clusters[k]) {
      out.model.c[u] = c(u, rep);
      out.model.g[u] = effective_gain(channels.h[u], out.beams->w.col(r));
    }
    // Decoding order: strongest effective gain first; ties by user index.
    auto& members = out.assignment.clusters[k];
    std::sort(members.begin(), members.end(), [&](int a, int b) {
      const double ea = out.model.c[a] * out.model.g[a];
      const double eb = out.model.c[b] * out.model.g[b];
      if (ea != eb) return ea > eb;
      return a < b;
    });
  }

  // A zero or non-positive alignment cannot meet any positive target.
  for (const auto& cl : out.assignment.clusters)
    for (int u : cl)
      if (!(out.model.c[u] > 0.0) || !(out.model.g[u] > 0.0)) return out;

  out.solution = p_min_closed_form(out.assignment, out.model);
  out.solution.feasible = test_p(out.solution, sys.p_max_w);
  out.ok = out.solution.feasible;
  return out;
}

}  // namespace noma

#include "noma/beamforming.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace noma {

std::vector<int> select_representatives(const ClusterAssignment& assignment,
                                        const CollinearityMatrix& c) {
  std::vector<int> reps(assignment.clusters.size(), -1);
  bool any = false;
  for (std::size_t k = 0; k < assignment.clusters.size(); ++k) {
    const auto& cl = assignment.clusters[k];
    if (cl.empty()) continue;
    any = true;
    int best = cl.front();
    double best_sum = -1.0;
    for (int u : cl) {
      double s = 0.0;
      for (int v : cl)
        if (v != u) s += c(u, v);
      if (s > best_sum || (s == best_sum && u < best)) {
        best_sum = s;
        best = u;
      }
    }
    reps[k] = best;
  }
  if (!any) throw std::invalid_argument("select_representatives: no cluster members");
  return reps;
}

std::optional<BeamformerSet> zf_precode(const Eigen::MatrixXcd& h_rep_rows) {
  if (h_rep_rows.rows() == 0 || h_rep_rows.cols() == 0)
    throw std::invalid_argument("zf_precode: empty representative matrix");
  if (h_rep_rows.rows() > h_rep_rows.cols())
    return std::nullopt;  // more clusters than antennas cannot be inverted

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h_rep_rows,
                                         Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * sv(0);
  if (!(sv(0) > 0.0) || sv(sv.size() - 1) < cutoff) return std::nullopt;

  Eigen::VectorXd inv = sv.cwiseInverse();
  Eigen::MatrixXcd w = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
  w /= w.norm();  // Frobenius norm 1
  return BeamformerSet{std::move(w)};
}

double effective_gain(const Eigen::VectorXcd& h, const Eigen::VectorXcd& w) {
  std::complex<double> ip = (h.transpose() * w)(0, 0);
  return std::norm(ip);
}

}  // namespace noma

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "noma/assignment.hpp"
#include "noma/channel.hpp"
#include "noma/collinearity.hpp"

namespace noma {

struct BeamformerSet {
  // One column per cluster, Frobenius norm of the whole matrix is 1.
  Eigen::MatrixXcd w;
};

// Per non-empty cluster, the member with the largest summed collinearity to
// the other members (ties: lowest user index; singletons pick themselves).
// Output is indexed like assignment.clusters, -1 for empty clusters.
// Throws if the assignment has no members at all.
std::vector<int> select_representatives(const ClusterAssignment& assignment,
                                        const CollinearityMatrix& c);

// Zero-forcing beams: Moore-Penrose pseudo-inverse of the matrix whose rows
// are the representative channels, then Frobenius-normalized. Singular
// values below 1e-10 of the largest mean the representatives are not
// resolvable; returns nullopt so the caller can re-cluster or drop one.
std::optional<BeamformerSet> zf_precode(const Eigen::MatrixXcd& h_rep_rows);

// |h^T w|^2 for one user against one beam column.
double effective_gain(const Eigen::VectorXcd& h, const Eigen::VectorXcd& w);

}  // namespace noma

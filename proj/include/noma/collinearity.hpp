#pragma once

#include <Eigen/Dense>
#include <vector>

#include "noma/channel.hpp"

namespace noma {

using CollinearityMatrix = Eigen::MatrixXd;

struct SortedPair {
  int i = 0;  // i < j
  int j = 0;
  double c = 0.0;
};

// C(i,j) = |<h_i, h_j>| / (|h_i| |h_j|), conjugated inner product. Symmetric,
// unit diagonal, entries in [0,1]. Throws on a zero-norm channel.
CollinearityMatrix collinearity(const ChannelSet& channels);

// All unordered pairs, descending collinearity; ties broken by
// (min index, max index) ascending.
std::vector<SortedPair> sorted_pairs(const CollinearityMatrix& c);

}  // namespace noma

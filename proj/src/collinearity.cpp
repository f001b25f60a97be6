#include "noma/collinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noma {

CollinearityMatrix collinearity(const ChannelSet& channels) {
  const int n = channels.n_users;
  Eigen::VectorXd norms(n);
  for (int i = 0; i < n; ++i) {
    norms(i) = channels.h[i].norm();
    if (!(norms(i) > 0.0)) throw std::invalid_argument("collinearity: zero-norm channel");
  }
  CollinearityMatrix c(n, n);
  for (int i = 0; i < n; ++i) {
    c(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double v = std::abs(channels.h[i].dot(channels.h[j])) / (norms(i) * norms(j));
      v = std::min(v, 1.0);  // guard rounding above 1 for parallel vectors
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return c;
}

std::vector<SortedPair> sorted_pairs(const CollinearityMatrix& c) {
  const int n = static_cast<int>(c.rows());
  std::vector<SortedPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j, c(i, j)});
  std::sort(pairs.begin(), pairs.end(), [](const SortedPair& a, const SortedPair& b) {
    if (a.c != b.c) return a.c > b.c;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  return pairs;
}

}  // namespace noma

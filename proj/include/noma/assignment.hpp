#pragma once

#include <stdexcept>
#include <vector>

namespace noma {

// Partition of users into at most n_rf_chains clusters plus an unserved set.
// The order of each cluster list is the SIC decoding order: index 0 is
// decoded first (strongest user, least power).
struct ClusterAssignment {
  int n_users = 0;
  std::vector<std::vector<int>> clusters;
  std::vector<int> unserved;

  int served_count() const {
    int s = 0;
    for (const auto& cl : clusters) s += static_cast<int>(cl.size());
    return s;
  }

  int non_empty_clusters() const {
    int k = 0;
    for (const auto& cl : clusters) k += cl.empty() ? 0 : 1;
    return k;
  }

  // Cluster index per user, -1 for unserved.
  std::vector<int> cluster_of() const {
    std::vector<int> m(n_users, -1);
    for (int k = 0; k < static_cast<int>(clusters.size()); ++k)
      for (int u : clusters[k]) m[u] = k;
    return m;
  }

  // Throws unless clusters and unserved are disjoint and cover all users.
  void validate(int max_clusters) const {
    if (static_cast<int>(clusters.size()) > max_clusters)
      throw std::logic_error("ClusterAssignment: too many clusters");
    std::vector<int> seen(n_users, 0);
    for (const auto& cl : clusters)
      for (int u : cl) {
        if (u < 0 || u >= n_users) throw std::logic_error("ClusterAssignment: bad user index");
        ++seen[u];
      }
    for (int u : unserved) {
      if (u < 0 || u >= n_users) throw std::logic_error("ClusterAssignment: bad user index");
      ++seen[u];
    }
    for (int u = 0; u < n_users; ++u)
      if (seen[u] != 1) throw std::logic_error("ClusterAssignment: not a partition");
  }
};

}  // namespace noma

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "noma/evaluate.hpp"

namespace noma {

using ClusteringResult = EvaluatedAssignment;

enum class Algorithm { kNearFar, kCorrPair, kRandom, kCia, kKuc, kGwo };

const char* algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);  // throws std::invalid_argument

// Near-far pairing: users sorted by squared channel norm, strongest paired
// with weakest into successive clusters (singleton when one user is left and
// a chain is free). Clusters that break joint feasibility are dropped whole,
// most power-hungry (largest alpha) first.
ClusteringResult near_far_pairing(const ChannelSet& channels, const CollinearityMatrix& c,
                                  const SystemConfig& sys);

// Correlation pairing: walk the descending pair list, pair two unassigned
// users into the next free chain. Same drop discipline as near-far.
ClusteringResult correlation_pairing(const ChannelSet& channels, const CollinearityMatrix& c,
                                     const SystemConfig& sys);

// Random baseline: shuffled users are tentatively added to uniformly random
// clusters; an addition that breaks feasibility is reverted and the user
// left unserved.
ClusteringResult random_clustering(const ChannelSet& channels, const CollinearityMatrix& c,
                                   const SystemConfig& sys, std::uint64_t seed);

// Correlation-iterative allocation. Phase 1 seeds clusters with the most
// correlated feasible pairs, routing leftovers into singleton and
// non-allocated pools; phase 2 merges cluster pairs to free a chain for a
// parked pair; phase 3 re-inserts singletons. Every mutation is kept only
// if the whole structure stays feasible, otherwise reverted exactly.
ClusteringResult cia(const ChannelSet& channels, const CollinearityMatrix& c,
                     const SystemConfig& sys);

struct KucOptions {
  int max_iters = 100;
  std::uint64_t seed = 1;
};

// K-means user clustering over rows of the collinearity matrix (k-means++
// seeding, Lloyd iterations), then the most power-hungry users (lowest c*g)
// are evicted until the allocation is feasible; finishes with
// run_power_control. Throws std::invalid_argument when n_users < n_rf_chains.
ClusteringResult kuc(const ChannelSet& channels, const CollinearityMatrix& c,
                     const SystemConfig& sys, const KucOptions& options);

struct GwoOptions {
  int pop_size = 20;
  int max_iters = 100;
  double penalty = 1.0;
  double penalty_power = 10.0;
  std::uint64_t seed = 1;
};

// Grey wolf optimizer over continuous cluster affinities in [0, M). Fitness
// rewards served users and penalizes non-allocated ones and any budget
// excess; infeasible decodes are repaired by pruning weakest users first.
// The best position found is decoded and finished with run_power_control.
// alpha_history, when given, receives the best fitness per iteration.
ClusteringResult gwo(const ChannelSet& channels, const CollinearityMatrix& c,
                     const SystemConfig& sys, const GwoOptions& options,
                     std::vector<double>* alpha_history = nullptr);

struct AlgorithmOptions {
  std::uint64_t seed = 1;  // consumed by the randomized algorithms
  KucOptions kuc;
  GwoOptions gwo;
};

ClusteringResult run_algorithm(Algorithm algorithm, const ChannelSet& channels,
                               const CollinearityMatrix& c, const SystemConfig& sys,
                               const AlgorithmOptions& options);

// Exposed pieces, unit-tested on their own.

double gwo_fitness(int served, int non_allocated, double total_power, double power_limit,
                   double penalty, double penalty_power);

// Linear 2 -> 0 over the run.
double gwo_convergence_factor(int iter, int max_iters);

struct KmeansResult {
  std::vector<int> membership;
  int iters = 0;
};
KmeansResult kmeans_cluster(const Eigen::MatrixXd& rows, int k, int max_iters,
                            std::mt19937_64& rng);

// D^2 seeding weights normalized to probabilities; all-zero input falls back
// to uniform.
std::vector<double> kmeans_pp_probabilities(const std::vector<double>& sq_dists);

// Repeatedly removes the served user with the smallest c*g until the
// closed-form allocation fits the budget. Shared by kuc, gwo and tests.
EvaluatedAssignment evict_until_feasible(const ChannelSet& channels,
                                         const CollinearityMatrix& c,
                                         ClusterAssignment assignment,
                                         const SystemConfig& sys);

}  // namespace noma

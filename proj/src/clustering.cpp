#include "noma/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "noma/rng.hpp"

namespace noma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ClusterAssignment empty_assignment(int n_users, int n_slots) {
  ClusterAssignment a;
  a.n_users = n_users;
  a.clusters.assign(n_slots, {});
  a.unserved.resize(n_users);
  std::iota(a.unserved.begin(), a.unserved.end(), 0);
  return a;
}

void remove_value(std::vector<int>& v, int value) {
  v.erase(std::remove(v.begin(), v.end(), value), v.end());
}

// Drop whole clusters, largest alpha first, until the structure is feasible.
// Used by both pairing algorithms. When beams cannot be formed (no alphas to
// compare) the highest-index non-empty cluster goes first.
EvaluatedAssignment drop_clusters_until_feasible(const ChannelSet& channels,
                                                 const CollinearityMatrix& c,
                                                 ClusterAssignment assignment,
                                                 const SystemConfig& sys) {
  for (;;) {
    EvaluatedAssignment eval = evaluate_assignment(channels, c, assignment, sys);
    if (eval.ok || eval.assignment.served_count() == 0) return eval;
    assignment = eval.assignment;

    int drop = -1;
    if (eval.beams && !eval.solution.coeffs.alpha.empty()) {
      double worst = -1.0;
      for (std::size_t k = 0; k < assignment.clusters.size(); ++k) {
        if (assignment.clusters[k].empty()) continue;
        double a = eval.solution.coeffs.alpha[k];
        if (std::isnan(a)) a = kInf;
        if (a > worst || drop < 0) {
          worst = a;
          drop = static_cast<int>(k);
        }
      }
    } else {
      for (int k = static_cast<int>(assignment.clusters.size()) - 1; k >= 0; --k)
        if (!assignment.clusters[k].empty()) {
          drop = k;
          break;
        }
    }
    for (int u : assignment.clusters[drop]) assignment.unserved.push_back(u);
    assignment.clusters[drop].clear();
  }
}

// Fitness-path pruner for gwo: per-cluster prefix sums of the recursion
// coefficients let a tail eviction update the closed form in O(clusters).
struct TailPruner {
  // prefix_a[k][t] = alpha of cluster k keeping its first t members.
  std::vector<std::vector<double>> prefix_a, prefix_b;
  std::vector<std::vector<double>> cg;  // c*g in decoding order
  std::vector<std::size_t> kept;

  TailPruner(const ClusterAssignment& assignment, const SinrModel& model) {
    const std::size_t m = assignment.clusters.size();
    prefix_a.resize(m);
    prefix_b.resize(m);
    cg.resize(m);
    kept.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      const auto& cl = assignment.clusters[k];
      kept[k] = cl.size();
      prefix_a[k].assign(cl.size() + 1, 0.0);
      prefix_b[k].assign(cl.size() + 1, 0.0);
      cg[k].resize(cl.size());
      double sum_a = 0.0, sum_b = 0.0;
      for (std::size_t i = 0; i < cl.size(); ++i) {
        const int u = cl[i];
        const double gth = model.gamma_th[u];
        const double a = gth * model.sigma2 / (model.c[u] * model.g[u]) + gth * sum_a;
        const double b = gth * (1.0 - model.c[u]) / model.c[u] + gth * sum_b;
        sum_a += a;
        sum_b += b;
        prefix_a[k][i + 1] = sum_a;
        prefix_b[k][i + 1] = sum_b;
        cg[k][i] = model.c[u] * model.g[u];
      }
    }
  }

  double total_if_feasible() const {
    double num = 0.0, den = 1.0;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      const double a = prefix_a[k][kept[k]];
      const double b = prefix_b[k][kept[k]];
      if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
      num += a / (1.0 + b);
      den -= b / (1.0 + b);
    }
    if (!(den > 0.0)) return kInf;
    return num / den;
  }

  // Evicts the globally weakest remaining user (always some cluster's tail,
  // since each cluster is sorted by descending c*g). Returns false when
  // nothing is left to evict.
  bool evict_weakest() {
    int pick = -1;
    double weakest = kInf;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      if (kept[k] == 0) continue;
      const double v = cg[k][kept[k] - 1];
      if (pick < 0 || v < weakest) {
        weakest = v;
        pick = static_cast<int>(k);
      }
    }
    if (pick < 0) return false;
    --kept[pick];
    return true;
  }

  int served() const {
    int s = 0;
    for (std::size_t k : kept) s += static_cast<int>(k);
    return s;
  }
};

struct WolfScore {
  double fitness = -kInf;
  int served = 0;
  double total = 0.0;
};

WolfScore score_wolf(const ChannelSet& channels, const CollinearityMatrix& c,
                     const std::vector<double>& position, const SystemConfig& sys,
                     const GwoOptions& opt) {
  const int n = channels.n_users;
  ClusterAssignment assignment;
  assignment.n_users = n;
  assignment.clusters.assign(sys.n_rf_chains, {});
  for (int u = 0; u < n; ++u) {
    int k = static_cast<int>(std::floor(position[u]));
    k = std::clamp(k, 0, sys.n_rf_chains - 1);
    assignment.clusters[k].push_back(u);
  }

  EvaluatedAssignment eval = evaluate_assignment(channels, c, assignment, sys);
  WolfScore score;
  if (!eval.beams) {
    // Unresolvable representatives: worse than pruning everyone.
    score.fitness = -static_cast<double>(n) * opt.penalty - 1.0;
    return score;
  }

  TailPruner pruner(eval.assignment, eval.model);
  double total = pruner.total_if_feasible();
  int pruned = 0;
  while (total > sys.p_max_w) {
    if (!pruner.evict_weakest()) break;
    ++pruned;
    total = pruner.total_if_feasible();
  }
  score.served = pruner.served();
  score.total = std::isfinite(total) ? total : 0.0;
  score.fitness = gwo_fitness(score.served, pruned, score.total, sys.p_max_w, opt.penalty,
                              opt.penalty_power);
  return score;
}

}  // namespace

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kNearFar: return "near_far";
    case Algorithm::kCorrPair: return "corr_pair";
    case Algorithm::kRandom: return "random";
    case Algorithm::kCia: return "cia";
    case Algorithm::kKuc: return "kuc";
    case Algorithm::kGwo: return "gwo";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::kNearFar, Algorithm::kCorrPair, Algorithm::kRandom,
                      Algorithm::kCia, Algorithm::kKuc, Algorithm::kGwo})
    if (name == algorithm_name(a)) return a;
  throw std::invalid_argument("unknown algorithm: " + name);
}

ClusteringResult near_far_pairing(const ChannelSet& channels, const CollinearityMatrix& c,
                                  const SystemConfig& sys) {
  const int n = channels.n_users;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double na = channels.h[a].squaredNorm(), nb = channels.h[b].squaredNorm();
    if (na != nb) return na > nb;
    return a < b;
  });

  ClusterAssignment assignment = empty_assignment(n, sys.n_rf_chains);
  int lo = 0, hi = n - 1;
  for (int slot = 0; slot < sys.n_rf_chains && lo <= hi; ++slot) {
    assignment.clusters[slot].push_back(order[lo]);
    remove_value(assignment.unserved, order[lo]);
    if (hi > lo) {
      assignment.clusters[slot].push_back(order[hi]);
      remove_value(assignment.unserved, order[hi]);
    }
    ++lo;
    --hi;
  }
  return drop_clusters_until_feasible(channels, c, std::move(assignment), sys);
}

ClusteringResult correlation_pairing(const ChannelSet& channels, const CollinearityMatrix& c,
                                     const SystemConfig& sys) {
  const int n = channels.n_users;
  ClusterAssignment assignment = empty_assignment(n, sys.n_rf_chains);
  std::vector<char> placed(n, 0);
  int slot = 0;
  for (const SortedPair& pr : sorted_pairs(c)) {
    if (slot >= sys.n_rf_chains) break;
    if (placed[pr.i] || placed[pr.j]) continue;
    assignment.clusters[slot] = {pr.i, pr.j};
    placed[pr.i] = placed[pr.j] = 1;
    remove_value(assignment.unserved, pr.i);
    remove_value(assignment.unserved, pr.j);
    ++slot;
  }
  return drop_clusters_until_feasible(channels, c, std::move(assignment), sys);
}

ClusteringResult random_clustering(const ChannelSet& channels, const CollinearityMatrix& c,
                                   const SystemConfig& sys, std::uint64_t seed) {
  const int n = channels.n_users;
  std::mt19937_64 rng(seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<int> pick(0, sys.n_rf_chains - 1);

  ClusterAssignment current = empty_assignment(n, sys.n_rf_chains);
  EvaluatedAssignment last = evaluate_assignment(channels, c, current, sys);
  for (int u : order) {
    const int k = pick(rng);
    ClusterAssignment candidate = current;
    candidate.clusters[k].push_back(u);
    remove_value(candidate.unserved, u);
    EvaluatedAssignment eval = evaluate_assignment(channels, c, candidate, sys);
    if (eval.ok) {
      current = eval.assignment;
      last = std::move(eval);
    }
  }
  return last;
}

ClusteringResult cia(const ChannelSet& channels, const CollinearityMatrix& c,
                     const SystemConfig& sys) {
  const int n = channels.n_users;
  const int m = sys.n_rf_chains;

  if (n == 1) {
    ClusterAssignment single = empty_assignment(1, m);
    single.clusters[0] = {0};
    single.unserved.clear();
    EvaluatedAssignment eval = evaluate_assignment(channels, c, single, sys);
    if (eval.ok) return eval;
    return evaluate_assignment(channels, c, empty_assignment(1, m), sys);
  }

  enum State : char { kFree, kPlaced, kSingleton, kNonAlloc };
  std::vector<State> state(n, kFree);
  std::vector<int> singles;                     // discovery order
  std::vector<std::pair<int, int>> non_alloc;   // descending-correlation order
  ClusterAssignment current = empty_assignment(n, m);

  auto first_empty_slot = [&]() {
    for (int k = 0; k < m; ++k)
      if (current.clusters[k].empty()) return k;
    return -1;
  };
  auto try_structure = [&](ClusterAssignment candidate) {
    EvaluatedAssignment eval = evaluate_assignment(channels, c, std::move(candidate), sys);
    if (eval.ok) current = eval.assignment;
    return eval.ok;
  };
  auto place_pair = [&](int i, int j, int slot) {
    ClusterAssignment candidate = current;
    candidate.clusters[slot] = {i, j};
    remove_value(candidate.unserved, i);
    remove_value(candidate.unserved, j);
    return try_structure(std::move(candidate));
  };

  // Phase 1: seed chains with the strongest-correlated pairs.
  for (const SortedPair& pr : sorted_pairs(c)) {
    const bool pi = state[pr.i] == kPlaced, pj = state[pr.j] == kPlaced;
    if (pi && pj) continue;
    if (pi != pj) {
      const int other = pi ? pr.j : pr.i;
      if (state[other] == kFree) {
        state[other] = kSingleton;
        singles.push_back(other);
      }
      continue;
    }
    const int slot = first_empty_slot();
    if (slot >= 0 && place_pair(pr.i, pr.j, slot)) {
      for (int u : {pr.i, pr.j}) {
        if (state[u] == kSingleton) remove_value(singles, u);
        state[u] = kPlaced;
      }
      continue;
    }
    if (state[pr.i] == kFree && state[pr.j] == kFree) {
      state[pr.i] = state[pr.j] = kNonAlloc;
      non_alloc.push_back({pr.i, pr.j});
    }
  }

  // Phase 2: free a chain for a parked pair, either through an unused slot
  // or by merging two clusters; keep only structures that stay feasible.
  for (const auto& [i, j] : non_alloc) {
    if (state[i] == kPlaced || state[j] == kPlaced) continue;
    bool done = false;
    const int slot = first_empty_slot();
    if (slot >= 0) done = place_pair(i, j, slot);
    for (std::size_t a = 0; !done && a < current.clusters.size(); ++a) {
      if (current.clusters[a].empty()) continue;
      for (std::size_t b = 0; !done && b < current.clusters.size(); ++b) {
        if (a == b || current.clusters[b].empty()) continue;
        ClusterAssignment candidate = current;
        auto& dst = candidate.clusters[a];
        dst.insert(dst.end(), candidate.clusters[b].begin(), candidate.clusters[b].end());
        candidate.clusters[b] = {i, j};
        remove_value(candidate.unserved, i);
        remove_value(candidate.unserved, j);
        done = try_structure(std::move(candidate));
      }
    }
    if (done) state[i] = state[j] = kPlaced;
  }

  // Phase 3: singleton re-insertion, cluster-major.
  for (std::size_t k = 0; k < current.clusters.size(); ++k) {
    for (int u : singles) {
      if (state[u] == kPlaced) continue;
      ClusterAssignment candidate = current;
      candidate.clusters[k].push_back(u);
      remove_value(candidate.unserved, u);
      if (try_structure(std::move(candidate))) state[u] = kPlaced;
    }
  }

  return evaluate_assignment(channels, c, current, sys);
}

EvaluatedAssignment evict_until_feasible(const ChannelSet& channels,
                                         const CollinearityMatrix& c,
                                         ClusterAssignment assignment,
                                         const SystemConfig& sys) {
  for (;;) {
    EvaluatedAssignment eval = evaluate_assignment(channels, c, assignment, sys);
    if (eval.ok || eval.assignment.served_count() == 0) return eval;
    assignment = eval.assignment;

    int victim = -1;
    double weakest = kInf;
    for (const auto& cl : assignment.clusters)
      for (int u : cl) {
        // Without beams fall back to the raw channel norm.
        const double v = eval.beams ? eval.model.c[u] * eval.model.g[u]
                                    : channels.h[u].squaredNorm();
        if (victim < 0 || v < weakest || (v == weakest && u < victim)) {
          weakest = v;
          victim = u;
        }
      }
    for (auto& cl : assignment.clusters) remove_value(cl, victim);
    assignment.unserved.push_back(victim);
  }
}

std::vector<double> kmeans_pp_probabilities(const std::vector<double>& sq_dists) {
  double sum = 0.0;
  for (double d : sq_dists) sum += d;
  std::vector<double> p(sq_dists.size());
  if (sum <= 0.0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(sq_dists.size()));
    return p;
  }
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = sq_dists[i] / sum;
  return p;
}

KmeansResult kmeans_cluster(const Eigen::MatrixXd& rows, int k, int max_iters,
                            std::mt19937_64& rng) {
  const int n = static_cast<int>(rows.rows());
  if (k < 1 || k > n) throw std::invalid_argument("kmeans_cluster: need 1 <= k <= n");

  // k-means++ seeding over the rows: next centroid drawn with probability
  // proportional to the squared distance to the closest chosen one.
  Eigen::MatrixXd centroids(k, rows.cols());
  std::uniform_int_distribution<int> uni_user(0, n - 1);
  centroids.row(0) = rows.row(uni_user(rng));
  std::vector<double> d2(n, kInf);
  for (int c = 1; c < k; ++c) {
    double sum = 0.0;
    for (int u = 0; u < n; ++u) {
      d2[u] = std::min(d2[u], (rows.row(u) - centroids.row(c - 1)).squaredNorm());
      sum += d2[u];
    }
    int pick = 0;
    if (sum > 0.0) {
      std::uniform_real_distribution<double> uni(0.0, sum);
      double r = uni(rng), acc = 0.0;
      for (int u = 0; u < n; ++u) {
        acc += d2[u];
        if (r <= acc) {
          pick = u;
          break;
        }
      }
    } else {
      pick = uni_user(rng);
    }
    centroids.row(c) = rows.row(pick);
  }

  KmeansResult res;
  res.membership.assign(n, -1);
  for (int it = 0; it < max_iters; ++it) {
    res.iters = it + 1;
    bool changed = false;
    std::vector<double> dist(n);
    for (int u = 0; u < n; ++u) {
      int best = 0;
      double best_d = kInf;
      for (int c = 0; c < k; ++c) {
        const double d = (rows.row(u) - centroids.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      dist[u] = best_d;
      if (res.membership[u] != best) {
        res.membership[u] = best;
        changed = true;
      }
    }
    if (!changed) break;

    std::vector<int> count(k, 0);
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, rows.cols());
    for (int u = 0; u < n; ++u) {
      next.row(res.membership[u]) += rows.row(u);
      ++count[res.membership[u]];
    }
    for (int c = 0; c < k; ++c) {
      if (count[c] > 0) {
        centroids.row(c) = next.row(c) / count[c];
      } else {
        // Empty cluster: reseed from the point farthest from its centroid.
        int far = static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
        centroids.row(c) = rows.row(far);
        dist[far] = 0.0;
      }
    }
  }
  return res;
}

ClusteringResult kuc(const ChannelSet& channels, const CollinearityMatrix& c,
                     const SystemConfig& sys, const KucOptions& options) {
  const int n = channels.n_users;
  if (n < sys.n_rf_chains)
    throw std::invalid_argument("kuc: degenerate instance, n_users < n_rf_chains");

  std::mt19937_64 rng(options.seed);
  KmeansResult km = kmeans_cluster(c, sys.n_rf_chains, options.max_iters, rng);

  ClusterAssignment assignment;
  assignment.n_users = n;
  assignment.clusters.assign(sys.n_rf_chains, {});
  for (int u = 0; u < n; ++u) assignment.clusters[km.membership[u]].push_back(u);

  EvaluatedAssignment eval = evict_until_feasible(channels, c, std::move(assignment), sys);
  eval.solution = run_power_control(eval.assignment, eval.model, sys.p_max_w);
  eval.ok = eval.solution.feasible;
  return eval;
}

double gwo_fitness(int served, int non_allocated, double total_power, double power_limit,
                   double penalty, double penalty_power) {
  return static_cast<double>(served) - penalty * static_cast<double>(non_allocated) -
         penalty_power * std::max(0.0, total_power - power_limit);
}

double gwo_convergence_factor(int iter, int max_iters) {
  if (max_iters <= 0) return 0.0;
  return 2.0 * (1.0 - static_cast<double>(iter) / static_cast<double>(max_iters));
}

ClusteringResult gwo(const ChannelSet& channels, const CollinearityMatrix& c,
                     const SystemConfig& sys, const GwoOptions& options,
                     std::vector<double>* alpha_history) {
  if (options.pop_size < 3) throw std::invalid_argument("gwo: pop_size must be >= 3");
  const int n = channels.n_users;
  const double span = static_cast<double>(sys.n_rf_chains);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uni_pos(0.0, span);
  std::uniform_real_distribution<double> uni01(0.0, 1.0);

  std::vector<std::vector<double>> pack(options.pop_size, std::vector<double>(n));
  for (auto& wolf : pack)
    for (double& x : wolf) x = uni_pos(rng);

  struct Leader {
    std::vector<double> pos;
    double fitness = -kInf;
  };
  Leader alpha, beta, delta;
  auto offer = [&](const std::vector<double>& pos, double fitness) {
    if (fitness > alpha.fitness) {
      delta = std::move(beta);
      beta = std::move(alpha);
      alpha = {pos, fitness};
    } else if (fitness > beta.fitness) {
      delta = std::move(beta);
      beta = {pos, fitness};
    } else if (fitness > delta.fitness) {
      delta = {pos, fitness};
    }
  };

  for (const auto& wolf : pack) offer(wolf, score_wolf(channels, c, wolf, sys, options).fitness);
  if (alpha_history) alpha_history->push_back(alpha.fitness);

  for (int it = 0; it < options.max_iters; ++it) {
    const double a = gwo_convergence_factor(it, options.max_iters);
    for (auto& wolf : pack) {
      for (int d = 0; d < n; ++d) {
        double pull = 0.0;
        for (const Leader* ld : {&alpha, &beta, &delta}) {
          const double a1 = 2.0 * a * uni01(rng) - a;
          const double c1 = 2.0 * uni01(rng);
          const double dist = std::abs(c1 * ld->pos[d] - wolf[d]);
          pull += ld->pos[d] - a1 * dist;
        }
        wolf[d] = std::clamp(pull / 3.0, 0.0, span);
      }
      offer(wolf, score_wolf(channels, c, wolf, sys, options).fitness);
    }
    if (alpha_history) alpha_history->push_back(alpha.fitness);
  }

  // Decode the best position and finish it with the strict pipeline.
  ClusterAssignment assignment;
  assignment.n_users = n;
  assignment.clusters.assign(sys.n_rf_chains, {});
  for (int u = 0; u < n; ++u) {
    int k = static_cast<int>(std::floor(alpha.pos[u]));
    assignment.clusters[std::clamp(k, 0, sys.n_rf_chains - 1)].push_back(u);
  }
  EvaluatedAssignment eval = evict_until_feasible(channels, c, std::move(assignment), sys);
  eval.solution = run_power_control(eval.assignment, eval.model, sys.p_max_w);
  eval.ok = eval.solution.feasible;
  return eval;
}

ClusteringResult run_algorithm(Algorithm algorithm, const ChannelSet& channels,
                               const CollinearityMatrix& c, const SystemConfig& sys,
                               const AlgorithmOptions& options) {
  switch (algorithm) {
    case Algorithm::kNearFar: return near_far_pairing(channels, c, sys);
    case Algorithm::kCorrPair: return correlation_pairing(channels, c, sys);
    case Algorithm::kRandom:
      return random_clustering(channels, c, sys, salted_seed(options.seed, 0x72616e64));
    case Algorithm::kCia: return cia(channels, c, sys);
    case Algorithm::kKuc: {
      KucOptions o = options.kuc;
      o.seed = salted_seed(options.seed, 0x6b756321);
      return kuc(channels, c, sys, o);
    }
    case Algorithm::kGwo: {
      GwoOptions o = options.gwo;
      o.seed = salted_seed(options.seed, 0x67776f21);
      return gwo(channels, c, sys, o);
    }
  }
  throw std::invalid_argument("run_algorithm: bad algorithm");
}

}  // namespace noma

#include <cmath>
#include <random>

#include "doctest.h"
#include "noma/oracle.hpp"
#include "noma/power.hpp"

namespace {

noma::ClusterAssignment single_cluster(int n) {
  noma::ClusterAssignment a;
  a.n_users = n;
  a.clusters.resize(1);
  for (int u = 0; u < n; ++u) a.clusters[0].push_back(u);
  return a;
}

noma::SinrModel uniform_model(int n, double gamma, double c, double g, double sigma2) {
  noma::SinrModel m;
  m.gamma_th.assign(n, gamma);
  m.c.assign(n, c);
  m.g.assign(n, g);
  m.sigma2 = sigma2;
  return m;
}

}  // namespace

TEST_CASE("second decoder sees the first user's power as interference") {
  noma::ClusterAssignment a = single_cluster(2);
  noma::SinrModel m = uniform_model(2, 10.0, 1.0, 1.0, 0.01);
  std::vector<double> p = {0.1, 1.1};
  CHECK(noma::sinr(0, p, a, m) == doctest::Approx(0.1 / 0.01).epsilon(1e-12));
  CHECK(noma::sinr(1, p, a, m) == doctest::Approx(1.1 / (0.01 + 0.1)).epsilon(1e-12));
}

TEST_CASE("minimum powers follow the sequential-substitution recursion") {
  noma::ClusterAssignment a = single_cluster(2);
  noma::SinrModel m = uniform_model(2, 10.0, 1.0, 1.0, 0.01);
  std::vector<double> p = noma::calcul_p(a, m, {0.0});
  REQUIRE(p.size() == 2);
  CHECK(p[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(1.1).epsilon(1e-12));
  // Both users then sit exactly at the threshold.
  CHECK(noma::sinr(0, p, a, m) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(noma::sinr(1, p, a, m) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("inter-cluster power inflates the recursion through (1-c)/c") {
  noma::ClusterAssignment a = single_cluster(1);
  noma::SinrModel m = uniform_model(1, 4.0, 0.8, 2.0, 0.01);
  std::vector<double> base = noma::calcul_p(a, m, {0.0});
  std::vector<double> loaded = noma::calcul_p(a, m, {0.5});
  // p = gamma*sigma2/(c g) + gamma*(1-c)/c * P_inter
  CHECK(base[0] == doctest::Approx(4.0 * 0.01 / (0.8 * 2.0)).epsilon(1e-12));
  CHECK(loaded[0] == doctest::Approx(base[0] + 4.0 * 0.25 * 0.5).epsilon(1e-12));
}

TEST_CASE("uniform-threshold coefficients match the exact recursion") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 1 + static_cast<int>(rng() % 6);
    int slots = 1 + static_cast<int>(rng() % 3);
    noma::ClusterAssignment a;
    a.n_users = n;
    a.clusters.resize(slots);
    for (int u = 0; u < n; ++u) a.clusters[rng() % slots].push_back(u);
    double gamma = std::pow(10.0, uni(rng) * 1.2);
    noma::SinrModel m;
    m.sigma2 = 0.001 + 0.05 * uni(rng);
    for (int u = 0; u < n; ++u) {
      m.gamma_th.push_back(gamma);
      m.c.push_back(0.55 + 0.45 * uni(rng));
      m.g.push_back(0.2 + 5.0 * uni(rng));
    }
    auto exact = noma::cluster_power_coefficients(a, m);
    auto fast = noma::cluster_power_coefficients_uniform(a, m, gamma);
    REQUIRE(exact.alpha.size() == fast.alpha.size());
    for (std::size_t k = 0; k < exact.alpha.size(); ++k) {
      CHECK(fast.alpha[k] ==
            doctest::Approx(exact.alpha[k]).epsilon(1e-9).scale(std::max(exact.alpha[k], 1e-30)));
      CHECK(fast.beta[k] ==
            doctest::Approx(exact.beta[k]).epsilon(1e-9).scale(std::max(exact.beta[k], 1e-30)));
    }
  }
}

TEST_CASE("closed form agrees with the fixed-point reference") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int rep = 0; rep < 300; ++rep) {
    noma::ClusterAssignment a;
    a.n_users = 4;
    a.clusters = {{0, 1}, {2, 3}};
    noma::SinrModel m;
    m.sigma2 = 0.01;
    // Draw straddles the feasibility boundary: low-c, high-gamma corners make
    // the inter-cluster coupling denominator go nonpositive.
    for (int u = 0; u < 4; ++u) {
      m.gamma_th.push_back(std::pow(10.0, 0.9 * uni(rng)));
      m.c.push_back(0.88 + 0.12 * uni(rng));
      m.g.push_back(0.1 + 3.0 * uni(rng));
    }
    noma::PowerSolution cf = noma::p_min_closed_form(a, m);
    noma::FixedPointResult fp = noma::fixed_point_p_min(a, m);
    if (cf.system_feasible && fp.converged) {
      ++feasible_seen;
      CHECK(std::abs(cf.p_min_total - fp.total) <= 1e-6 * std::max(cf.p_min_total, 1e-30));
    } else if (!cf.system_feasible) {
      ++infeasible_seen;
      CHECK_FALSE(fp.converged);
    }
    if (cf.system_feasible) {
      // The per-user powers achieve every threshold exactly.
      for (int u = 0; u < 4; ++u)
        CHECK(noma::sinr(u, cf.p, a, m) ==
              doctest::Approx(m.gamma_th[u]).epsilon(1e-9));
      double sum = 0.0;
      for (double v : cf.p) sum += v;
      CHECK(sum == doctest::Approx(cf.p_min_total).epsilon(1e-9));
    }
  }
  CHECK(feasible_seen > 20);
  CHECK(infeasible_seen > 20);
}

TEST_CASE("empty and unserved-only assignments cost nothing") {
  noma::ClusterAssignment a;
  a.n_users = 2;
  a.clusters = {{}, {}};
  a.unserved = {0, 1};
  noma::SinrModel m = uniform_model(2, 10.0, 1.0, 1.0, 0.01);
  noma::PowerSolution s = noma::p_min_closed_form(a, m);
  CHECK(s.system_feasible);
  CHECK(s.p_min_total == 0.0);
  CHECK(s.p[0] == 0.0);
  CHECK(s.p[1] == 0.0);
}

TEST_CASE("test_p stamps the budget") {
  noma::ClusterAssignment a = single_cluster(2);
  noma::SinrModel m = uniform_model(2, 10.0, 1.0, 1.0, 0.01);
  noma::PowerSolution s = noma::p_min_closed_form(a, m);
  REQUIRE(s.system_feasible);
  CHECK(s.p_min_total == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(noma::test_p(s, 1.3));
  CHECK_FALSE(noma::test_p(s, 1.1));
}

TEST_CASE("deep clusters at a 10 dB threshold go system-infeasible") {
  // beta ~ gamma (1-c)/c (1+gamma)^(n-1): at c=0.99 a depth-3 cluster alone
  // exceeds the feasibility margin when another cluster is present.
  noma::ClusterAssignment a;
  a.n_users = 4;
  a.clusters = {{0, 1, 2}, {3}};
  noma::SinrModel m = uniform_model(4, 10.0, 0.99, 5.0, 0.01);
  noma::PowerSolution s = noma::p_min_closed_form(a, m);
  CHECK_FALSE(s.system_feasible);
  noma::FixedPointResult fp = noma::fixed_point_p_min(a, m);
  CHECK_FALSE(fp.converged);
}

TEST_CASE("power control step redistributes slack and conserves the total") {
  noma::PowerControlState st;
  st.p_max_vec = {0.5, 0.5};
  st.p_min_vec = {0.2, 0.3};
  std::vector<double> next = noma::power_control_step(st);
  REQUIRE(next.size() == 2);
  CHECK(next[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(next[1] == doctest::Approx(0.6).epsilon(1e-12));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int rep = 0; rep < 500; ++rep) {
    int m = 1 + static_cast<int>(rng() % 8);
    noma::PowerControlState s;
    double total = 0.0;
    for (int k = 0; k < m; ++k) {
      double pmax = 0.05 + uni(rng);
      s.p_max_vec.push_back(pmax);
      s.p_min_vec.push_back(pmax * uni(rng));
      total += pmax;
    }
    std::vector<double> out = noma::power_control_step(s);
    double sum = 0.0;
    for (double v : out) sum += v;
    CHECK(std::abs(sum - total) <= 1e-12 * std::max(1.0, total));
    if (m == 1) CHECK(out[0] == s.p_max_vec[0]);
  }
}

TEST_CASE("run_power_control settles on a feasible allocation") {
  noma::ClusterAssignment a;
  a.n_users = 4;
  a.clusters = {{0, 1}, {2, 3}};
  noma::SinrModel m = uniform_model(4, 4.0, 0.999, 2.0, 0.001);
  noma::PowerSolution s = noma::run_power_control(a, m, 1.0);
  CHECK(s.system_feasible);
  CHECK(s.feasible);
  CHECK(s.total <= 1.0 + 1e-12);
  for (int u = 0; u < 4; ++u)
    CHECK(noma::sinr(u, s.p, a, m) >= m.gamma_th[u] - 1e-9);
}

TEST_CASE("model validation rejects nonsense inputs") {
  noma::ClusterAssignment a = single_cluster(1);
  noma::SinrModel m = uniform_model(1, 10.0, 1.0, 1.0, 0.01);
  noma::SinrModel bad = m;
  bad.sigma2 = 0.0;
  CHECK_THROWS_AS(noma::calcul_p(a, bad, {0.0}), std::invalid_argument);
  bad = m;
  bad.c[0] = 0.0;
  CHECK_THROWS_AS(noma::calcul_p(a, bad, {0.0}), std::invalid_argument);
  bad = m;
  bad.gamma_th[0] = -1.0;
  CHECK_THROWS_AS(noma::calcul_p(a, bad, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(noma::calcul_p(a, m, {0.0, 0.0}), std::invalid_argument);
}

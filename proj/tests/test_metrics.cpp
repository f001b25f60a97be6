#include <cmath>

#include "doctest.h"
#include "noma/metrics.hpp"

TEST_CASE("user rates follow Shannon capacity over the configured bandwidth") {
  noma::ClusterAssignment a;
  a.n_users = 3;
  a.clusters = {{0, 1}};
  a.unserved = {2};
  noma::PowerSolution s;
  s.p = {0.1, 1.1, 0.0};
  s.total = 1.2;
  s.achieved_sinr = {10.0, 10.0, 0.0};
  s.system_feasible = true;
  s.feasible = true;

  std::vector<double> rates = noma::user_rates(a, s, 200e3);
  const double per_user = 200e3 * std::log2(11.0);
  CHECK(rates[0] == doctest::Approx(per_user).epsilon(1e-12));
  CHECK(rates[1] == doctest::Approx(per_user).epsilon(1e-12));
  CHECK(rates[2] == 0.0);
  CHECK(per_user == doctest::Approx(691886.3237274595).epsilon(1e-12));

  noma::MetricsRecord rec = noma::compute_metrics(a, s, 200e3);
  CHECK(rec.served_users == 2);
  CHECK(rec.sum_rate_bps == doctest::Approx(2.0 * per_user).epsilon(1e-12));
  CHECK(rec.total_power_w == doctest::Approx(1.2));
  CHECK(rec.energy_efficiency_bpj == doctest::Approx(2.0 * per_user / 1.2).epsilon(1e-12));
  CHECK_FALSE(rec.zero_power);

  CHECK_THROWS_AS(noma::user_rates(a, s, 0.0), std::invalid_argument);
}

TEST_CASE("energy efficiency of an empty solution is zero by convention") {
  CHECK(noma::energy_efficiency(0.0, 0.0) == 0.0);
  CHECK(noma::energy_efficiency(5.0, 0.0) == 0.0);
  CHECK(noma::energy_efficiency(6.0, 2.0) == doctest::Approx(3.0));

  noma::ClusterAssignment a;
  a.n_users = 1;
  a.clusters = {{}};
  a.unserved = {0};
  noma::PowerSolution s;
  s.p = {0.0};
  s.achieved_sinr = {0.0};
  noma::MetricsRecord rec = noma::compute_metrics(a, s, 200e3);
  CHECK(rec.served_users == 0);
  CHECK(rec.energy_efficiency_bpj == 0.0);
  CHECK(rec.zero_power);
}

#include <cmath>
#include <set>

#include "doctest.h"
#include "noma/rng.hpp"

TEST_CASE("trial_seed is a pure function and separates points and trials") {
  CHECK(noma::trial_seed(1, 0, 0) == noma::trial_seed(1, 0, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t master : {1ULL, 2ULL, 99ULL})
    for (std::uint64_t point = 0; point < 4; ++point)
      for (std::uint64_t trial = 0; trial < 4; ++trial)
        seen.insert(noma::trial_seed(master, point, trial));
  CHECK(seen.size() == 3 * 4 * 4);
}

TEST_CASE("salted_seed decouples consumers of one trial seed") {
  std::uint64_t s = noma::trial_seed(7, 2, 5);
  CHECK(noma::salted_seed(s, 1) != noma::salted_seed(s, 2));
  CHECK(noma::salted_seed(s, 1) == noma::salted_seed(s, 1));
}

TEST_CASE("laplace samples have the requested scale") {
  std::mt19937_64 rng(123);
  const double b = 0.7;
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = noma::sample_laplace(rng, b);
    sum += x;
    sq += x * x;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(var == doctest::Approx(2.0 * b * b).epsilon(0.03));
}

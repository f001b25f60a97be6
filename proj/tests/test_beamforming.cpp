#include <random>

#include "doctest.h"
#include "noma/beamforming.hpp"

namespace {

Eigen::MatrixXcd random_rows(int k, int m, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd a(k, m);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = std::complex<double>(n(rng), n(rng));
  return a;
}

}  // namespace

TEST_CASE("representative selection maximizes summed collinearity") {
  noma::CollinearityMatrix c(4, 4);
  c << 1.0, 0.9, 0.8, 0.0,
       0.9, 1.0, 0.1, 0.0,
       0.8, 0.1, 1.0, 0.0,
       0.0, 0.0, 0.0, 1.0;
  noma::ClusterAssignment a;
  a.n_users = 4;
  a.clusters = {{0, 1, 2}, {3}, {}};
  auto reps = noma::select_representatives(a, c);
  REQUIRE(reps.size() == 3);
  CHECK(reps[0] == 0);   // row sums over members: u0 1.7, u1 1.0, u2 0.9
  CHECK(reps[1] == 3);   // singleton picks itself
  CHECK(reps[2] == -1);  // empty slot

  // Tie: two users see identical sums; the lower index wins.
  noma::CollinearityMatrix t = noma::CollinearityMatrix::Identity(2, 2);
  t(0, 1) = t(1, 0) = 0.6;
  noma::ClusterAssignment pair;
  pair.n_users = 2;
  pair.clusters = {{1, 0}};
  CHECK(noma::select_representatives(pair, t)[0] == 0);

  noma::ClusterAssignment empty;
  empty.n_users = 0;
  empty.clusters = {{}};
  CHECK_THROWS_AS(noma::select_representatives(empty, t), std::invalid_argument);
}

TEST_CASE("zero-forcing beams satisfy the pseudo-inverse axioms") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 50; ++rep) {
    int m = 2 + static_cast<int>(rng() % 7);
    int k = 1 + static_cast<int>(rng() % m);
    Eigen::MatrixXcd a = random_rows(k, m, rng);
    auto beams = noma::zf_precode(a);
    REQUIRE(beams.has_value());
    const Eigen::MatrixXcd& w = beams->w;
    CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::MatrixXcd prod = a * w;
    std::complex<double> scale = prod(0, 0);
    CHECK(std::abs(scale) > 0.0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j)
          CHECK(std::abs(prod(i, j) - scale) < 1e-9 * std::abs(scale));
        else
          CHECK(std::abs(prod(i, j)) < 1e-9 * std::abs(scale));
      }

    // Undo the Frobenius normalization to recover the raw pseudo-inverse.
    Eigen::MatrixXcd pinv = w / scale;
    double anorm = a.norm();
    CHECK((a * pinv * a - a).norm() < 1e-9 * anorm);
    CHECK((pinv * a * pinv - pinv).norm() < 1e-9 * pinv.norm());
    CHECK(((a * pinv).adjoint() - a * pinv).norm() < 1e-9);
    CHECK(((pinv * a).adjoint() - pinv * a).norm() < 1e-9);
  }
}

TEST_CASE("rank deficiency and over-wide systems are rejected") {
  std::mt19937_64 rng(17);
  Eigen::MatrixXcd a = random_rows(2, 4, rng);
  Eigen::MatrixXcd dup(3, 4);
  dup.row(0) = a.row(0);
  dup.row(1) = a.row(1);
  dup.row(2) = a.row(0) * std::complex<double>(0.3, -0.1);  // parallel row
  CHECK_FALSE(noma::zf_precode(dup).has_value());

  Eigen::MatrixXcd wide = random_rows(5, 4, rng);  // more clusters than antennas
  CHECK_FALSE(noma::zf_precode(wide).has_value());
}

TEST_CASE("effective gain uses the unconjugated product") {
  Eigen::VectorXcd h(2), w(2);
  h << std::complex<double>(0.0, 1.0), 0.0;
  w << 1.0, 0.0;
  CHECK(noma::effective_gain(h, w) == doctest::Approx(1.0));
  h << 1.0, std::complex<double>(0.0, 1.0);
  w << 1.0, std::complex<double>(0.0, 1.0);
  // h^T w = 1 + i^2 * 1 = 0: transpose, not adjoint.
  CHECK(noma::effective_gain(h, w) == doctest::Approx(0.0));
}

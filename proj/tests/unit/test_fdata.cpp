#include <algorithm>
#include <cmath>

#include <catch_amalgamated.hpp>

#include "kfsd/error.hpp"
#include "kfsd/fdata.hpp"
#include "support.hpp"

using namespace kfsd;
using Catch::Approx;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid({0.0, 1.0, 3.0}), Error);
  CHECK_THROWS_AS(Grid({0.0, 0.0}), Error);
  CHECK_THROWS_AS(Grid({1.0}), Error);
  const Grid g = Grid::equidistant(0.0, 1.0, 5);
  CHECK(g.size() == 5);
  CHECK(g.step() == Approx(0.25));
  double total = 0.0;
  for (double w : g.weights()) total += w;
  CHECK(total == Approx(1.0));
}

TEST_CASE("build_sample") {
  const auto grid = std::make_shared<const Grid>(std::vector<double>{0.0, 0.5, 1.0});
  RowMatrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const auto s = build_sample(m, grid);
  CHECK(s.size() == 2);
  CHECK(s.points() == 3);
  CHECK(s.row(1)[2] == 6.0);

  m(1, 1) = std::nan("");
  try {
    build_sample(m, grid);
    FAIL("expected NonFiniteValue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteValue);
  }

  RowMatrix wide(2, 4);
  wide.setZero();
  CHECK_THROWS_AS(build_sample(wide, grid), Error);
  RowMatrix one(1, 3);
  one.setZero();
  CHECK_THROWS_AS(build_sample(one, grid), Error);
}

TEST_CASE("l2 distance") {
  const auto grid = test::unit_grid(51);
  const Curve zero(grid, Eigen::VectorXd::Zero(51));
  const Curve one(grid, Eigen::VectorXd::Ones(51));
  CHECK(l2_distance(zero, zero) == 0.0);
  CHECK(l2_distance(one, zero) == Approx(1.0).epsilon(1e-12));

  const Curve ramp(grid, Eigen::VectorXd::LinSpaced(51, 0.0, 1.0));
  // exact integral is 1/sqrt(3); trapezoid adds h^2/6 to the squared norm
  const double h = 0.02;
  CHECK(l2_distance(ramp, zero) == Approx(std::sqrt(1.0 / 3.0 + h * h / 6.0)).epsilon(1e-12));
  CHECK(l2_distance(ramp, zero) == Approx(1.0 / std::sqrt(3.0)).margin(1e-4));

  const Curve other(test::unit_grid(11), Eigen::VectorXd::Zero(11));
  CHECK_THROWS_AS(l2_distance(ramp, other), Error);
}

TEST_CASE("pairwise distances") {
  CHECK(pairwise_distances(test::constants({3.0, 3.0})).matrix().isZero());

  const auto d = pairwise_distances(test::constants({0.0, 1.0, 2.0}));
  CHECK(d(0, 1) == Approx(1.0));
  CHECK(d(0, 2) == Approx(2.0));
  CHECK(d(1, 2) == Approx(1.0));

  RngStream rng(5);
  const auto s = test::random_sample(8, 13, rng);
  const auto dm = pairwise_distances(s);
  CHECK(dm.matrix() == dm.matrix().transpose());
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(dm(i, i) == 0.0);
    for (std::size_t j = 0; j < 8; ++j) CHECK(dm(i, j) == Approx(test::trapz_distance(s.row(i), s.row(j), 0, 1)));
  }
  CHECK(dm.sorted_pairs().size() == 28);
  CHECK(std::is_sorted(dm.sorted_pairs().begin(), dm.sorted_pairs().end()));
}

TEST_CASE("distance percentile") {
  // five points, ten pair distances 1..10
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
  double v = 1.0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) m(i, j) = m(j, i) = v++;
  const DistanceMatrix d(m);
  CHECK(distance_percentile(d, 50) == 5.0);
  CHECK(distance_percentile(d, 10) == 1.0);
  CHECK(distance_percentile(d, 100) == 10.0);
  CHECK(distance_percentile(d, 51) == 6.0);
  CHECK_THROWS_AS(distance_percentile(d, 0), Error);

  Eigen::MatrixXd eq = Eigen::MatrixXd::Constant(4, 4, 2.5);
  eq.diagonal().setZero();
  for (double p : {10.0, 50.0, 90.0}) CHECK(distance_percentile(DistanceMatrix(eq), p) == 2.5);

  try {
    distance_percentile(pairwise_distances(test::constants({1.0, 1.0, 1.0})), 50);
    FAIL("expected DegenerateSample");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSample);
  }

  RngStream rng(9);
  const auto dr = pairwise_distances(test::random_sample(12, 7, rng));
  double prev = 0.0;
  for (int p = 1; p <= 100; ++p) {
    const double q = distance_percentile(dr, p);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("sample covariance") {
  CHECK(sample_covariance(test::constants({1.0, 1.0}, 3)).isZero());

  const auto grid = test::unit_grid(2);
  RowMatrix v(2, 2);
  v << 0, 0, 2, 2;
  const auto cov = sample_covariance(FunctionalSample(grid, v));
  CHECK(cov.isApprox(Eigen::MatrixXd::Constant(2, 2, 2.0)));

  RngStream rng(3);
  const auto s = test::random_sample(6, 15, rng);
  const auto c = sample_covariance(s);
  CHECK(c == c.transpose());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(c);
  lu.setThreshold(1e-10);
  CHECK(lu.rank() <= 5);

  const std::vector<std::size_t> perm{3, 1, 5, 0, 4, 2};
  CHECK(sample_covariance(s.subset(perm)).isApprox(c, 1e-12));
}

TEST_CASE("subset and without") {
  const auto s = test::constants({0, 1, 2, 3});
  const std::vector<std::size_t> drop{1, 3};
  const auto w = s.without(drop);
  REQUIRE(w.size() == 2);
  CHECK(w.row(0)[0] == 0.0);
  CHECK(w.row(1)[0] == 2.0);
  const std::vector<std::size_t> keep{3, 0, 3};
  const auto k = s.subset(keep);
  REQUIRE(k.size() == 3);
  CHECK(k.row(0)[0] == 3.0);
  CHECK(k.row(2)[0] == 3.0);
}

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <catch_amalgamated.hpp>

#include "kfsd/error.hpp"
#include "kfsd/resample.hpp"
#include "support.hpp"

using namespace kfsd;
using Catch::Approx;

namespace {

Eigen::MatrixXd empirical_cov(const std::vector<Eigen::VectorXd>& draws) {
  const auto m = draws.front().size();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(m);
  for (const auto& d : draws) mean += d;
  mean /= static_cast<double>(draws.size());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
  for (const auto& d : draws) c += (d - mean) * (d - mean).transpose();
  return c / static_cast<double>(draws.size() - 1);
}

}  // namespace

TEST_CASE("identity covariance gives unit variance") {
  const GaussianPerturbation g(Eigen::MatrixXd::Identity(6, 6), 1.0);
  CHECK(g.rank() == 6);
  RngStream rng(1);
  std::vector<Eigen::VectorXd> draws;
  for (int i = 0; i < 10000; ++i) draws.push_back(g.draw(rng));
  const auto c = empirical_cov(draws);
  for (int k = 0; k < 6; ++k) CHECK(c(k, k) == Approx(1.0).epsilon(0.05));
}

TEST_CASE("rank-one covariance draws lie on the eigenvector") {
  Eigen::VectorXd v(5);
  v << 1, -2, 0.5, 3, 0;
  const GaussianPerturbation g(v * v.transpose(), 0.3);
  CHECK(g.rank() == 1);
  RngStream rng(2);
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd z = g.draw(rng);
    const double scale = z.dot(v) / v.squaredNorm();
    CHECK((z - scale * v).norm() <= 1e-9 * std::max(1.0, z.norm()));
  }
}

TEST_CASE("perturbation scales with gamma") {
  const Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(3, 3) * 4.0;
  RngStream a(3), b(3);
  const Eigen::VectorXd big = GaussianPerturbation(cov, 1.0).draw(a);
  const Eigen::VectorXd tiny = GaussianPerturbation(cov, 1e-12).draw(b);
  CHECK(tiny.norm() < 1e-5);
  CHECK(tiny.isApprox(big * 1e-6, 1e-9));
  CHECK_THROWS_AS(GaussianPerturbation(cov, 0.0), Error);
}

TEST_CASE("perturbation validation") {
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(3, 3);
  asym(0, 1) = 1.0;
  try {
    GaussianPerturbation(asym, 0.1);
    FAIL("expected NonSymmetricCovariance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSymmetricCovariance);
  }
  CHECK_THROWS_AS(GaussianPerturbation(Eigen::MatrixXd::Identity(2, 2), -1.0), Error);
}

TEST_CASE("trimmed pool") {
  std::vector<double> depth(50);
  for (std::size_t i = 0; i < 50; ++i) depth[i] = 0.5 + 0.01 * static_cast<double>((i * 7) % 50);
  const auto pool = trimmed_pool(depth, 0.05);
  CHECK(pool.size() == 47);
  std::vector<std::size_t> order(50);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return depth[a] < depth[b]; });
  for (int k = 0; k < 3; ++k) CHECK(std::find(pool.begin(), pool.end(), order[k]) == pool.end());

  // ties are removed lower index first
  CHECK(trimmed_pool({0.1, 0.1, 0.1, 0.9}, 0.25) == std::vector<std::size_t>{1, 2, 3});
  try {
    trimmed_pool({0.1, 0.2, 0.3}, 0.9);
    FAIL("expected EmptyPool");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyPool);
  }

  const auto s = test::constants({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  std::vector<double> d10{0.9, 0.1, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.95};
  RngStream rng(4);
  const auto z = resample(s, ResampleScheme::trimmed(0.2, d10), 500, SmoothingConfig{0.05}, rng);
  CHECK(z.sample.size() == 500);
  for (auto b : z.base_indices) {
    CHECK(b != 1);
    CHECK(b != 8);
  }
}

TEST_CASE("weighted and simple schemes") {
  const auto s = test::constants({0, 1, 2, 3});
  RngStream rng(5);
  const auto all_one = resample(s, ResampleScheme::weighted({0, 0, 1, 0}), 100, SmoothingConfig{0.05}, rng);
  for (auto b : all_one.base_indices) CHECK(b == 2);
  try {
    resample(s, ResampleScheme::weighted({0, 0, 0, 0}), 10, SmoothingConfig{0.05}, rng);
    FAIL("expected ZeroWeightSum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroWeightSum);
  }

  // weights proportional to depth
  const auto w = resample(s, ResampleScheme::weighted({1, 1, 2, 0}), 8000, SmoothingConfig{0.05}, rng);
  std::vector<int> counts(4, 0);
  for (auto b : w.base_indices) counts[b]++;
  CHECK(counts[3] == 0);
  CHECK(counts[2] / 8000.0 == Approx(0.5).margin(0.03));

  const auto single = test::constants({7.0}, 5);
  const auto copies = resample(single, ResampleScheme::simple(), 20, SmoothingConfig{0.05}, rng);
  CHECK(copies.sample.size() == 20);
  CHECK((copies.sample.values().array() == 7.0).all());
}

TEST_CASE("resampled curves are perturbed base curves") {
  RngStream rng(6);
  const auto s = test::random_sample(10, 8, rng);
  const auto z = resample(s, ResampleScheme::simple(), 50, SmoothingConfig{0.05}, rng);
  std::set<std::size_t> bases(z.base_indices.begin(), z.base_indices.end());
  CHECK(bases.size() > 1);
  for (std::size_t i = 0; i < 50; ++i) {
    const double diff = test::trapz_distance(z.sample.row(i), s.row(z.base_indices[i]), 0, 1);
    CHECK(diff > 0.0);
    CHECK(diff < 3.0);
  }
}

TEST_CASE("gaussian_perturbation on a full-rank covariance") {
  const auto grid = test::unit_grid(10);
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(10, 10);
  const Eigen::MatrixXd sigma = a * a.transpose() + Eigen::MatrixXd::Identity(10, 10);
  RngStream rng(7);
  std::vector<Eigen::VectorXd> draws;
  for (int i = 0; i < 20000; ++i) draws.push_back(gaussian_perturbation(grid, sigma, 0.05, rng).values());
  const auto c = empirical_cov(draws);
  for (int i = 0; i < 10; ++i) CHECK(c(i, i) == Approx(0.05 * sigma(i, i)).epsilon(0.05));
}

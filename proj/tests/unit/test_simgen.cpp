#include <cmath>
#include <numbers>

#include <catch_amalgamated.hpp>

#include "kfsd/error.hpp"
#include "kfsd/simgen.hpp"

using namespace kfsd;
using Catch::Approx;

TEST_CASE("error process moments") {
  const MixtureGenerator gen(MixtureModelSpec{MixtureModel::MM1, 0.0});
  const auto& grid = *gen.grid();
  RngStream rng(1);
  const int N = 10000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(51), sq = Eigen::VectorXd::Zero(51);
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(51, 51);
  for (int i = 0; i < N; ++i) {
    const Eigen::VectorXd e = gen.draw_eps(rng);
    sum += e;
    cross += e * e.transpose();
  }
  const Eigen::VectorXd mean = sum / N;
  const Eigen::MatrixXd cov = (cross - N * mean * mean.transpose()) / (N - 1);
  for (int k = 0; k < 51; k += 5) {
    CHECK(cov(k, k) == Approx(0.25).epsilon(0.05));
    CHECK(std::abs(mean(k)) < 3.0 * 0.5 / std::sqrt(N));
    for (int l = 0; l < 51; l += 10) {
      const double corr = cov(k, l) / std::sqrt(cov(k, k) * cov(l, l));
      const double d = grid[static_cast<std::size_t>(k)] - grid[static_cast<std::size_t>(l)];
      CHECK(corr == Approx(std::exp(-d * d)).margin(0.05));
    }
  }
}

TEST_CASE("grids") {
  CHECK(MixtureModelSpec{MixtureModel::MM2}.grid()->back() == 1.0);
  CHECK(MixtureModelSpec{MixtureModel::MM5}.grid()->back() == Approx(2 * std::numbers::pi));
  CHECK(MixtureModelSpec{MixtureModel::MM5}.grid()->size() == 51);
}

TEST_CASE("alpha zero gives no outliers") {
  for (auto m : {MixtureModel::MM1, MixtureModel::MM4}) {
    RngStream rng(2);
    const auto ds = gen_dataset(MixtureModelSpec{m, 0.0}, rng);
    CHECK(ds.n_out == 0);
    for (bool o : ds.outlier) CHECK_FALSE(o);
    CHECK(ds.sample.size() == 50);
    CHECK(ds.sample.points() == 51);
  }
}

TEST_CASE("model mean functions") {
  const int N = 4000;
  auto mean_at = [&](MixtureModel model, bool outlier, std::size_t k) {
    const MixtureGenerator gen(MixtureModelSpec{model, 0.0});
    RngStream rng(3);
    double s = 0;
    for (int i = 0; i < N; ++i) s += gen.draw_curve(outlier, rng)(static_cast<Eigen::Index>(k));
    return s / N;
  };
  const double tol = 4 * 0.5 / std::sqrt(N);
  // MM1 normal and outlier means cross at s = 0.5
  CHECK(mean_at(MixtureModel::MM1, false, 25) == Approx(2.0).margin(tol));
  CHECK(mean_at(MixtureModel::MM1, true, 25) == Approx(2.0).margin(tol));
  CHECK(mean_at(MixtureModel::MM1, true, 0) == Approx(-2.0).margin(tol));
  CHECK(mean_at(MixtureModel::MM3, true, 50) == Approx(4 * std::exp(1.0)).margin(tol));
  // MM4 outliers: E[u3] = 0.16 at s = 0 where sin vanishes
  CHECK(mean_at(MixtureModel::MM4, true, 0) == Approx(0.16).margin(1e-3));
  CHECK(mean_at(MixtureModel::MM4, false, 0) == Approx(0.10).margin(2e-3));
  // MM6 outliers at 2 pi: exp(0.69) E[u4]
  CHECK(std::exp(0.69) == Approx(1.9937).margin(1e-4));
  CHECK(mean_at(MixtureModel::MM6, true, 50) == Approx(std::exp(0.69) * 0.125).margin(3e-3));
}

TEST_CASE("outlier curves of MM2 are rougher than normal ones") {
  const MixtureGenerator gen(MixtureModelSpec{MixtureModel::MM2, 0.0});
  RngStream rng(4);
  auto roughness = [](const Eigen::VectorXd& y) { return (y.tail(50) - y.head(50)).squaredNorm(); };
  double normal = 0, outlier = 0;
  for (int i = 0; i < 200; ++i) {
    normal += roughness(gen.draw_curve(false, rng));
    outlier += roughness(gen.draw_curve(true, rng));
  }
  CHECK(outlier > 10 * normal);

  const MixtureGenerator shift(MixtureModelSpec{MixtureModel::MM2, 0.0, 50, 51, NoiseMode::ScalarShift});
  double shifted = 0;
  for (int i = 0; i < 200; ++i) shifted += roughness(shift.draw_curve(true, rng));
  CHECK(shifted == Approx(normal).epsilon(0.3));
}

TEST_CASE("study inputs") {
  const auto a = gen_study_inputs(MixtureModel::MM1, 0.05, 100, 7);
  std::size_t total = 0;
  for (const auto& ds : a) total += ds.n_out;
  // expected 250, sd about 15.4
  CHECK(total > 190);
  CHECK(total < 310);

  const auto b = gen_study_inputs(MixtureModel::MM1, 0.05, 5, 7);
  for (std::size_t r = 0; r < 5; ++r) CHECK(b[r].sample.values() == a[r].sample.values());
  const auto c = gen_study_inputs(MixtureModel::MM1, 0.05, 5, 8);
  CHECK(c[0].sample.values() != a[0].sample.values());
  CHECK_THROWS_AS(gen_study_inputs(MixtureModel::MM1, 0.05, 0, 7), Error);
  CHECK(parse_model("mm5") == MixtureModel::MM5);
  CHECK_THROWS_AS(parse_model("MM7"), Error);
}

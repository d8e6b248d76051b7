#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <catch_amalgamated.hpp>

#include "kfsd/depths.hpp"
#include "kfsd/error.hpp"
#include "support.hpp"

using namespace kfsd;
using Catch::Approx;

namespace {

// Direct FSD: 1 - || mean of unit vectors (x - y_i) / ||x - y_i|| ||, zero-distance curves skipped.
double fsd_oracle(std::span<const double> x, const FunctionalSample& s) {
  const std::size_t m = x.size();
  const double lo = s.grid()->front(), hi = s.grid()->back();
  std::vector<double> sum(m, 0.0);
  std::size_t used = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = test::trapz_distance(x, s.row(i), lo, hi);
    if (d == 0.0) continue;
    ++used;
    for (std::size_t k = 0; k < m; ++k) sum[k] += (x[k] - s.row(i)[k]) / d;
  }
  if (used == 0) return 0.0;
  for (auto& v : sum) v /= static_cast<double>(used);
  const std::vector<double> zero(m, 0.0);
  return 1.0 - test::trapz_distance(sum, zero, lo, hi);
}

double mbd_oracle(std::span<const double> x, const FunctionalSample& s) {
  // fraction of pairs (i < j) whose band contains x(t), averaged over t
  const std::size_t n = s.size(), m = x.size();
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t inside = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double a = s.row(i)[k], b = s.row(j)[k];
        inside += (std::min(a, b) <= x[k] && x[k] <= std::max(a, b)) ? 1 : 0;
      }
    total += static_cast<double>(inside) / static_cast<double>(n * (n - 1) / 2);
  }
  return total / static_cast<double>(m);
}

}  // namespace

TEST_CASE("gaussian kernel") {
  const auto a = test::constant_curve(0.0);
  CHECK(gaussian_kernel(a, a, 1.0) == 1.0);
  CHECK(gaussian_kernel(a, test::constant_curve(0.5), 0.5) == Approx(std::exp(-1.0)));
  CHECK(gaussian_kernel(a, test::constant_curve(1.0), 0.5) == Approx(std::exp(-4.0)));
  CHECK(gaussian_kernel(a, test::constant_curve(1.0), 0.5) == Approx(0.018316).margin(1e-6));
  CHECK_THROWS_AS(gaussian_kernel(a, a, 0.0), Error);
}

TEST_CASE("fsd closed cases") {
  CHECK(fsd(test::constant_curve(0.0), test::constants({2.0})) == Approx(0.0).margin(1e-15));
  CHECK(fsd(test::constant_curve(0.0), test::constants({1.0, -1.0})) == Approx(1.0));
  const auto s = test::constants({0.0, 1.0, 3.0});
  const auto x = test::constant_curve(1.0);
  CHECK(fsd(x, s) == Approx(fsd_oracle(x.span(), s)).epsilon(1e-12));
  const auto x2 = test::constant_curve(0.4);
  CHECK(fsd(x2, s) == Approx(fsd_oracle(x2.span(), s)).epsilon(1e-12));
}

TEST_CASE("kfsd closed cases") {
  const KernelConfig g{KernelKind::Gaussian, 1.0};
  CHECK(kfsd::kfsd(test::constant_curve(0.0), test::constants({3.0}), g) == Approx(0.0).margin(1e-12));

  // two curves symmetric about x, each at distance sigma
  const double e1 = std::exp(-1.0), e4 = std::exp(-4.0);
  const double expected = 1.0 - 0.5 * std::sqrt(2.0 + 2.0 * (1.0 + e4 - 2.0 * e1) / (2.0 - 2.0 * e1));
  const double got = kfsd::kfsd(test::constant_curve(0.0), test::constants({1.0, -1.0}), g);
  CHECK(got == Approx(expected).epsilon(1e-12));
  CHECK(got == Approx(0.2179).margin(1e-4));

  // middle of three nested constants is deepest
  const auto s = test::constants({0.0, 1.0, 2.0});
  const auto params = resolve_depth_params(DepthSpec{DepthId::KFSD}, s);
  const auto d = depth_all(s, params).values;
  CHECK(d[1] > d[0]);
  CHECK(d[1] > d[2]);

  try {
    depth_all(test::constants({1.0, 1.0, 1.0}), resolve_depth_params(DepthSpec{DepthId::KFSD}, test::constants({0, 1})));
    FAIL("expected DegenerateSample");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSample);
  }
  try {
    resolve_depth_params(DepthSpec{DepthId::KFSD}, test::constants({1.0, 1.0, 1.0}));
    FAIL("expected DegenerateSample");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSample);
  }
}

TEST_CASE("linear-kernel kfsd equals fsd") {
  RngStream rng(11);
  const KernelConfig lin{KernelKind::Linear, 1.0};
  for (int rep = 0; rep < 20; ++rep) {
    const auto s = test::random_sample(3 + static_cast<std::size_t>(rep % 10), 5 + static_cast<std::size_t>(rep), rng);
    const auto x = test::random_sample(1, s.points(), rng).curve(0);
    CHECK(kfsd::kfsd(x, s, lin) == Approx(fsd(x, s)).margin(1e-9));
    CHECK(fsd(x, s) == Approx(fsd_oracle(x.span(), s)).margin(1e-12));
  }
}

TEST_CASE("hmd") {
  const double c = 2.0 / std::sqrt(2.0 * std::numbers::pi);
  CHECK(c == Approx(0.797885).margin(1e-6));
  CHECK(hmd(test::constant_curve(0.0), test::constants({0.0}), 0.3) == Approx(c));
  const double h = 0.4;
  CHECK(hmd(test::constant_curve(0.0), test::constants({h, -2 * h}), h) ==
        Approx(c * (std::exp(-0.5) + std::exp(-2.0))));
  CHECK(hmd(test::constant_curve(1e6), test::constants({0.0, 1.0}), 1.0) == Approx(0.0).margin(1e-300));
  CHECK_THROWS_AS(hmd(test::constant_curve(0.0), test::constants({0.0}), 0.0), Error);
}

TEST_CASE("fmd") {
  CHECK(fmd(test::constant_curve(0.0), test::constants({0.0})) == Approx(0.5));
  CHECK(fmd(test::constant_curve(9.0), test::constants({0.0, 1.0, 2.0})) == Approx(0.5));
  // pointwise median of an odd sample with distinct values is deepest
  RngStream rng(21);
  const auto s = test::random_sample(7, 9, rng);
  Eigen::VectorXd med(9);
  for (Eigen::Index k = 0; k < 9; ++k) {
    std::vector<double> col(7);
    for (std::size_t i = 0; i < 7; ++i) col[i] = s.row(i)[static_cast<std::size_t>(k)];
    std::nth_element(col.begin(), col.begin() + 3, col.end());
    med(k) = col[3];
  }
  const double dm = fmd(Curve(s.grid(), med), s);
  for (std::size_t i = 0; i < 7; ++i) CHECK(fmd(s.curve(i), s) <= dm);
  CHECK(dm == Approx(1.0 - std::abs(0.5 - 4.0 / 7.0)));
}

TEST_CASE("mbd") {
  const auto s = test::constants({0.0, 1.0, 2.0});
  CHECK(mbd(test::constant_curve(0.0), s) == Approx(2.0 / 3.0));
  CHECK(mbd(test::constant_curve(1.0), s) == Approx(1.0));
  CHECK(mbd(test::constant_curve(0.5), s) == Approx(mbd_oracle(test::constant_curve(0.5).span(), s)));
  RngStream rng(4);
  const auto r = test::random_sample(9, 6, rng);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(mbd(r.curve(i), r) == Approx(mbd_oracle(r.row(i), r)));
}

TEST_CASE("rtd") {
  const auto grid = test::unit_grid(11);
  const auto proj = ProjectionSet::draw(grid, 30, 17);
  CHECK(rtd(test::constant_curve(3.0), test::constants({3.0}), proj) == Approx(1.0));
  const auto s = test::constants({0.0, 1.0, 2.0, 3.0});
  CHECK(rtd(test::constant_curve(10.0), s, proj) == 0.0);
  CHECK(rtd(test::constant_curve(3.0), s, proj) == Approx(0.25));

  RngStream rng(8);
  const auto r = test::random_sample(10, 11, rng);
  RowMatrix shifted = r.values().array() + 5.0;
  const FunctionalSample rs(grid, shifted);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Eigen::VectorXd x = r.curve(i).values().array() + 5.0;
    CHECK(rtd(Curve(grid, x), rs, proj) == Approx(rtd(r.curve(i), r, proj)));
  }
}

TEST_CASE("idd") {
  const auto grid = test::unit_grid(11);
  const auto s = test::constants({-2.0, -1.0, 1.0, 2.0});
  const auto proj = ProjectionSet::draw(grid, 25, 3);
  CHECK(idd(test::constant_curve(0.0), s, proj) == Approx(2.0 / 3.0));
  CHECK(idd(test::constant_curve(10.0), s, proj) == 0.0);

  RngStream rng(2);
  const auto r = test::random_sample(6, 11, rng);
  const auto one = ProjectionSet::draw(grid, 1, 99);
  const auto x = r.curve(2);
  const Eigen::VectorXd px = one.project(x.span());
  std::vector<double> p(6);
  for (std::size_t i = 0; i < 6; ++i) p[i] = one.project(r.row(i))(0);
  std::size_t inside = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) inside += std::min(p[i], p[j]) <= px(0) && px(0) <= std::max(p[i], p[j]);
  CHECK(idd(x, r, one) == Approx(static_cast<double>(inside) / 15.0));
}

TEST_CASE("projection directions have unit norm") {
  const auto grid = test::unit_grid(21);
  const auto proj = ProjectionSet::draw(grid, 10, 5);
  for (std::size_t r = 0; r < proj.size(); ++r) {
    std::span<const double> u(proj.directions().data() + r * 21, 21);
    CHECK(l2_inner(u, u, *grid) == Approx(1.0));
  }
  CHECK(ProjectionSet::draw(grid, 10, 5).directions() == proj.directions());
}

TEST_CASE("depth_all agrees with scalar depths and is permutation equivariant") {
  RngStream rng(31);
  const auto s = test::random_sample(12, 9, rng);
  const std::vector<std::size_t> perm{5, 3, 11, 0, 8, 1, 2, 10, 4, 9, 7, 6};
  const auto sp = s.subset(perm);
  for (auto id : {DepthId::FSD, DepthId::KFSD, DepthId::HMD, DepthId::FMD, DepthId::MBD, DepthId::RTD, DepthId::IDD}) {
    DepthSpec spec;
    spec.id = id;
    spec.projection_seed = 77;
    const auto params = resolve_depth_params(spec, s);
    const auto all = depth_all(s, params).values;
    const auto allp = depth_all(sp, params).values;
    for (std::size_t i = 0; i < perm.size(); ++i) CHECK(allp[i] == Approx(all[perm[i]]).epsilon(1e-12));
    if (id == DepthId::KFSD) {
      for (std::size_t i = 0; i < s.size(); ++i) CHECK(all[i] == Approx(kfsd::kfsd(s.curve(i), s, params.kernel)));
    }
    if (id == DepthId::MBD) {
      for (std::size_t i = 0; i < s.size(); ++i) CHECK(all[i] == Approx(mbd(s.curve(i), s)));
    }
  }
}

TEST_CASE("depth bounds on random inputs") {
  RngStream rng(41);
  const auto grid = test::unit_grid(8);
  const auto proj = ProjectionSet::draw(grid, 20, 1);
  for (int rep = 0; rep < 200; ++rep) {
    const auto s = test::random_sample(2 + static_cast<std::size_t>(rep % 9), 8, rng);
    const auto x = test::random_sample(1, 8, rng).curve(0);
    const KernelConfig g{KernelKind::Gaussian, 0.2 + rng.uniform(0.0, 3.0)};
    for (double v : {fsd(x, s), kfsd::kfsd(x, s, g), mbd(x, s), fmd(x, s), rtd(x, s, proj), idd(x, s, proj)}) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("parse depth id") {
  CHECK(parse_depth_id("kfsd") == DepthId::KFSD);
  CHECK(parse_depth_id("Mbd") == DepthId::MBD);
  CHECK_THROWS_AS(parse_depth_id("tukey"), Error);
}

#include <algorithm>
#include <numeric>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "kfsd/depths.hpp"
#include "kfsd/error.hpp"
#include "kfsd/simgen.hpp"
#include "kfsd/tune.hpp"

using namespace kfsd;
using Catch::Approx;

namespace {

FunctionalSample mm1_sample(std::uint64_t seed, std::size_t n = 50) {
  RngStream rng(seed);
  return MixtureGenerator(MixtureModelSpec{MixtureModel::MM1, 0.05, n}).draw_dataset(rng).sample;
}

}  // namespace

TEST_CASE("peripheral set size averages J") {
  const auto s = mm1_sample(1);
  const TuningConfig cfg;
  std::size_t total = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    RngStream rng(1000 + static_cast<std::uint64_t>(r));
    const auto set = build_peripheral_set(s, cfg, rng);
    std::size_t sum_l = 0;
    for (const auto& t : set.replications) sum_l += t.count;
    CHECK(sum_l == set.size());
    CHECK(set.replications.size() == 20);
    total += set.size();
  }
  // L ~ Bin(1000, 1/50) summed: mean 20, sd about 4.4 per draw
  CHECK(static_cast<double>(total) / reps == Approx(20.0).margin(1.2));
}

TEST_CASE("peripheral origins are the least-deep curves") {
  const auto s = mm1_sample(2);
  const auto dist = pairwise_distances(s);
  RngStream rng(3);
  const auto set = build_peripheral_set(s, TuningConfig{}, rng);
  REQUIRE(set.size() > 0);
  for (const auto& o : set.origins) {
    DepthSpec spec;
    spec.kfsd_percentile = o.percentile;
    const auto d = depth_all(s, resolve_depth_params(spec, s, dist)).values;
    const std::size_t l = set.replications[o.replication].count;
    const auto strictly_lower = std::count_if(d.begin(), d.end(), [&](double v) { return v < d[o.source_index]; });
    CHECK(static_cast<std::size_t>(strictly_lower) < l);
  }
}

TEST_CASE("replication with no peripheral curves contributes nothing") {
  const auto s = mm1_sample(4, 30);
  TuningConfig cfg;
  cfg.replications = 1;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RngStream rng(seed);
    const auto set = build_peripheral_set(s, cfg, rng);
    if (set.replications[0].count == 0) {
      CHECK(set.size() == 0);
      CHECK(set.curves.rows() == 0);
      RngStream pick(seed);
      CHECK_THROWS_AS(select_percentile(s, set, cfg, pick), Error);
      return;
    }
  }
  FAIL("no empty replication in 200 seeds");
}

TEST_CASE("single candidate always wins") {
  const auto s = mm1_sample(5);
  TuningConfig cfg;
  cfg.candidates = {30};
  RngStream rng(6);
  const auto res = tune_percentile(s, cfg, rng);
  CHECK(res.percentile == 30.0);
}

TEST_CASE("rank sums stay within bounds and the minimum wins") {
  const auto s = mm1_sample(7);
  const TuningConfig cfg;
  RngStream rng(8);
  const auto set = build_peripheral_set(s, cfg, rng);
  REQUIRE(set.size() > 0);
  RngStream pick(9);
  const auto choice = select_percentile(s, set, cfg, pick);
  const std::size_t L = set.size();
  for (auto r : choice.rank_sums) {
    CHECK(r >= L);
    CHECK(r <= 51 * L);
  }
  const auto best = std::min_element(choice.rank_sums.begin(), choice.rank_sums.end());
  const auto chosen = std::find(cfg.candidates.begin(), cfg.candidates.end(), choice.percentile);
  REQUIRE(chosen != cfg.candidates.end());
  CHECK(choice.rank_sums[static_cast<std::size_t>(chosen - cfg.candidates.begin())] == *best);
}

TEST_CASE("a perfectly separating candidate dominates") {
  // far peripheral curves are shallowest under the wide bandwidth (rank 1 each);
  // the narrow one makes every curve look isolated and ranks them worse
  const auto s = mm1_sample(10);
  PeripheralSet set;
  set.grid = s.grid();
  set.curves = RowMatrix::Constant(3, static_cast<Eigen::Index>(s.points()), 50.0);
  set.origins = {{0, 0, 50}, {0, 1, 50}, {0, 2, 50}};
  TuningConfig cfg;
  cfg.candidates = {20, 60};
  RngStream rng(11);
  const auto choice = select_percentile(s, set, cfg, rng);
  CHECK(choice.rank_sums[1] == 3);
  CHECK(choice.rank_sums[0] > 3);
  CHECK(choice.percentile == 60.0);
}

TEST_CASE("tuning is reproducible and writes a trace") {
  const auto s = mm1_sample(12);
  RngStream a(13), b(13);
  const auto ra = tune_percentile(s, TuningConfig{}, a);
  const auto rb = tune_percentile(s, TuningConfig{}, b);
  CHECK(ra.percentile == rb.percentile);
  CHECK(ra.rank_sums == rb.rank_sums);
  std::ostringstream out;
  write_tuning_trace_csv(out, ra, TuningConfig{});
  CHECK(out.str().find("chosen,percentile,") != std::string::npos);
}

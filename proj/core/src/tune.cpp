#include "kfsd/tune.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

#include "kfsd/csv.hpp"
#include "kfsd/depths.hpp"
#include "kfsd/error.hpp"
#include "kfsd/resample.hpp"

namespace kfsd {

namespace {

void check_config(const TuningConfig& cfg) {
  if (cfg.candidates.empty()) throw Error(ErrorCode::InvalidArgument, "no candidate percentiles");
  if (cfg.replications < 1) throw Error(ErrorCode::InvalidArgument, "J must be at least 1");
}

DepthParams kfsd_params(const DistanceMatrix& dist, double percentile) {
  DepthParams p;
  p.id = DepthId::KFSD;
  p.kfsd_percentile = percentile;
  p.kernel.sigma = distance_percentile(dist, percentile);
  return p;
}

}  // namespace

PeripheralSet build_peripheral_set(const FunctionalSample& sample, const TuningConfig& cfg, RngStream& rng) {
  check_config(cfg);
  const std::size_t n = sample.size();
  const DistanceMatrix dist = pairwise_distances(sample);
  const GaussianPerturbation perturbation(sample_covariance(sample), cfg.gamma);

  PeripheralSet set;
  set.grid = sample.grid();
  std::vector<Eigen::VectorXd> rows;
  std::uniform_int_distribution<std::size_t> pick_candidate(0, cfg.candidates.size() - 1);
  std::binomial_distribution<std::size_t> peripheral_count(n, 1.0 / static_cast<double>(n));

  for (std::size_t j = 0; j < cfg.replications; ++j) {
    const double p = cfg.candidates[pick_candidate(rng)];
    const std::size_t l = peripheral_count(rng);
    set.replications.push_back({p, l});
    if (l == 0) continue;

    const auto depth = depth_all(sample, kfsd_params(dist, p)).values;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return depth[a] < depth[b]; });
    for (std::size_t i = 0; i < l; ++i) {
      Eigen::VectorXd y = sample.values().row(static_cast<Eigen::Index>(order[i])).transpose();
      y += perturbation.draw(rng);
      rows.push_back(std::move(y));
      set.origins.push_back({j, order[i], p});
    }
  }
  set.curves.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(sample.points()));
  for (std::size_t r = 0; r < rows.size(); ++r) set.curves.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return set;
}

PercentileChoice select_percentile(const FunctionalSample& sample, const PeripheralSet& pset, const TuningConfig& cfg,
                                   RngStream& rng) {
  check_config(cfg);
  if (pset.size() == 0) throw Error(ErrorCode::EmptyPeripheralSet, "no peripheral curves to rank");
  if (!same_grid(pset.grid, sample.grid())) throw Error(ErrorCode::DimensionMismatch, "peripheral set grid mismatch");

  const std::size_t K = cfg.candidates.size();
  PercentileChoice choice;
  choice.rank_sums.assign(K, 0);
  if (K == 1) {
    choice.percentile = cfg.candidates.front();
  }
  const DistanceMatrix dist = pairwise_distances(sample);

  for (std::size_t k = 0; k < K; ++k) {
    const ReferenceDepth ref(sample, kfsd_params(dist, cfg.candidates[k]));
    std::vector<double> own(sample.size());
    for (std::size_t i = 0; i < own.size(); ++i) own[i] = ref.member_depth(i);
    std::sort(own.begin(), own.end());
    for (std::size_t l = 0; l < pset.size(); ++l) {
      const std::span<const double> y(pset.curves.data() + l * sample.points(), sample.points());
      const double d = ref.depth(y, pset.origins[l].source_index);
      // Placed after equal sample depths.
      const auto below_or_equal = static_cast<std::size_t>(std::upper_bound(own.begin(), own.end(), d) - own.begin());
      choice.rank_sums[k] += 1 + below_or_equal;
    }
  }
  if (K == 1) return choice;

  const std::size_t best = *std::min_element(choice.rank_sums.begin(), choice.rank_sums.end());
  std::vector<std::size_t> tied;
  for (std::size_t k = 0; k < K; ++k) {
    if (choice.rank_sums[k] == best) tied.push_back(k);
  }
  std::size_t winner = tied.front();
  if (tied.size() > 1) winner = tied[std::uniform_int_distribution<std::size_t>(0, tied.size() - 1)(rng)];
  choice.percentile = cfg.candidates[winner];
  return choice;
}

TuningResult tune_percentile(const FunctionalSample& sample, const TuningConfig& cfg, RngStream& rng) {
  check_config(cfg);
  TuningResult result;
  for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
    RngStream stream = rng.split(attempt);
    result.attempts = attempt + 1;
    result.peripheral = build_peripheral_set(sample, cfg, stream);
    if (result.peripheral.size() > 0) {
      const auto choice = select_percentile(sample, result.peripheral, cfg, stream);
      result.percentile = choice.percentile;
      result.rank_sums = choice.rank_sums;
      return result;
    }
  }
  std::vector<double> sorted = cfg.candidates;
  std::sort(sorted.begin(), sorted.end());
  result.percentile = sorted[sorted.size() / 2];
  result.fallback = true;
  return result;
}

void write_tuning_trace_csv(std::ostream& out, const TuningResult& result, const TuningConfig& cfg) {
  out << "section,key,value\n";
  for (std::size_t j = 0; j < result.peripheral.replications.size(); ++j) {
    const auto& r = result.peripheral.replications[j];
    out << "replication_percentile," << j << ',' << format_double(r.percentile) << '\n';
    out << "replication_count," << j << ',' << r.count << '\n';
  }
  for (std::size_t k = 0; k < result.rank_sums.size() && k < cfg.candidates.size(); ++k) {
    out << "rank_sum," << format_double(cfg.candidates[k]) << ',' << result.rank_sums[k] << '\n';
  }
  out << "chosen,percentile," << format_double(result.percentile) << '\n';
  out << "chosen,fallback," << (result.fallback ? 1 : 0) << '\n';
}

}  // namespace kfsd

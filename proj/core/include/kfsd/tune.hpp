#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "kfsd/fdata.hpp"
#include "kfsd/rng.hpp"

namespace kfsd {

struct TuningConfig {
  std::vector<double> candidates{10, 20, 30, 40, 50, 60, 70, 80, 90};
  std::size_t replications = 20;  // J
  double gamma = 0.05;
};

struct PeripheralOrigin {
  std::size_t replication = 0;
  std::size_t source_index = 0;  // curve of the original sample it was smoothed from
  double percentile = 0.0;       // p^j used to rank that replication
};

struct ReplicationTrace {
  double percentile = 0.0;
  std::size_t count = 0;  // l_j
};

/// Smoothed copies of the least-deep curves, pooled over J replications.
struct PeripheralSet {
  GridPtr grid;
  RowMatrix curves;  // L x m
  std::vector<PeripheralOrigin> origins;
  std::vector<ReplicationTrace> replications;

  std::size_t size() const noexcept { return origins.size(); }
};

/// Steps I-IV: per replication draw p^j, rank the sample by KFSD with that
/// percentile, take the l_j ~ Bin(n, 1/n) least-deep curves and perturb them
/// with N(0, gamma * Sigma). May return an empty set.
PeripheralSet build_peripheral_set(const FunctionalSample& sample, const TuningConfig& cfg, RngStream& rng);

struct PercentileChoice {
  double percentile = 0.0;
  std::vector<std::size_t> rank_sums;  // one per candidate
};

/// Rank-aggregation choice of the KFSD bandwidth percentile. Each peripheral
/// curve is ranked (1..n+1, placed after equal values) among the sample's own
/// depths; the candidate with the smallest rank sum wins, ties broken at random.
PercentileChoice select_percentile(const FunctionalSample& sample, const PeripheralSet& pset, const TuningConfig& cfg,
                                   RngStream& rng);

struct TuningResult {
  double percentile = 0.0;
  bool fallback = false;    // no peripheral curves after one retry
  std::size_t attempts = 0;
  PeripheralSet peripheral;
  std::vector<std::size_t> rank_sums;
};

/// Full procedure with one retry on an empty peripheral set, then the median
/// candidate as fallback.
TuningResult tune_percentile(const FunctionalSample& sample, const TuningConfig& cfg, RngStream& rng);

/// replication,percentile,count rows followed by candidate rank sums and the choice.
void write_tuning_trace_csv(std::ostream& out, const TuningResult& result, const TuningConfig& cfg);

}  // namespace kfsd

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kfsd/depths.hpp"
#include "kfsd/detect.hpp"
#include "kfsd/simgen.hpp"

namespace kfsd {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;

  Confusion& operator+=(const Confusion& o) noexcept {
    tp += o.tp;
    fn += o.fn;
    fp += o.fp;
    tn += o.tn;
    return *this;
  }
  bool operator==(const Confusion&) const = default;
};

Confusion confusion(std::span<const bool> flags, const std::vector<bool>& truth);

Confusion run_replication(const LabeledSample& dataset, const MethodSpec& method, const MethodSettings& settings,
                          RngStream& rng);

struct StudyConfig {
  std::vector<MixtureModel> models;
  std::vector<double> alphas;
  std::vector<MethodSpec> methods;
  std::size_t R = 100;
  std::uint64_t master_seed = 0;
  std::size_t n = 50;
  NoiseMode noise = NoiseMode::PerPoint;
  MethodSettings settings;  // alpha is replaced per cell
  std::size_t threads = 1;
};

struct StudyCell {
  MixtureModel model = MixtureModel::MM1;
  double alpha = 0.0;
  std::string method;
  Confusion counts;
  std::size_t replications = 0;

  std::size_t outliers() const noexcept { return counts.tp + counts.fn; }
  std::size_t normals() const noexcept { return counts.fp + counts.tn; }
  /// Percent of generated outliers flagged; NaN when none were generated.
  double c() const noexcept;
  /// Percent of generated normal curves flagged; NaN when there were none.
  double f() const noexcept;
};

struct StudyResult {
  std::vector<StudyCell> cells;  // model-major, then alpha, then method
  std::size_t R = 0;
  std::uint64_t master_seed = 0;

  const StudyCell& cell(MixtureModel model, double alpha, const std::string& method) const;
};

/// Sub-stream used by `method` on replication r.
RngStream method_stream(MixtureModel model, double alpha, std::uint64_t master_seed, std::size_t r,
                        const MethodSpec& method);

/// Pooled c/f over R replications per (model, alpha, method). All methods of a
/// replication see the same dataset; the result does not depend on `threads`.
StudyResult run_study(const StudyConfig& cfg);

void write_study_csv(std::ostream& out, const StudyResult& result);
/// One section per (model, alpha) with a c / f row per method.
void write_study_table(std::ostream& out, const StudyResult& result);

struct RankingResult {
  DepthId depth = DepthId::KFSD;
  std::size_t hits = 0;
  std::size_t outliers = 0;
  double percentage() const noexcept;
};

/// Indices of the k lowest depths, ordered by (value, index).
std::vector<std::size_t> lowest_k(std::span<const double> depths, std::size_t k);

/// Share of generated outliers whose depth is among the n_out lowest of their
/// dataset; datasets without outliers are skipped.
std::vector<RankingResult> ranking_experiment(MixtureModel model, double alpha, std::span<const DepthId> depths,
                                              std::size_t R, std::uint64_t master_seed, std::size_t n = 50,
                                              const DepthSpec& defaults = {}, NoiseMode noise = NoiseMode::PerPoint,
                                              std::size_t threads = 1);

}  // namespace kfsd

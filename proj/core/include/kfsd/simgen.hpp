#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "kfsd/fdata.hpp"
#include "kfsd/resample.hpp"
#include "kfsd/rng.hpp"

namespace kfsd {

enum class MixtureModel { MM1, MM2, MM3, MM4, MM5, MM6 };

std::string_view to_string(MixtureModel model) noexcept;
MixtureModel parse_model(std::string_view name);

/// How MM2/MM5 outliers add their normal draw: i.i.d. per grid point
/// (irregular curves, the default) or one scalar shift per curve.
enum class NoiseMode { PerPoint, ScalarShift };

struct MixtureModelSpec {
  MixtureModel model = MixtureModel::MM1;
  double alpha = 0.05;
  std::size_t n = 50;
  std::size_t m = 51;
  NoiseMode noise = NoiseMode::PerPoint;

  /// [0, 1] for MM1-MM3, [0, 2 pi] for MM4-MM6.
  GridPtr grid() const;
};

struct LabeledSample {
  FunctionalSample sample;
  std::vector<bool> outlier;
  std::size_t n_out = 0;
};

/// 0.25 exp(-(s - s')^2) evaluated on the grid.
Eigen::MatrixXd eps_covariance(const Grid& grid);

/// Draws curves of one mixture model; holds the factorized error covariance.
class MixtureGenerator {
 public:
  explicit MixtureGenerator(MixtureModelSpec spec);

  const MixtureModelSpec& spec() const noexcept { return spec_; }
  const GridPtr& grid() const noexcept { return grid_; }

  Eigen::VectorXd draw_eps(RngStream& rng) const;
  Eigen::VectorXd draw_curve(bool outlier, RngStream& rng) const;
  /// n curves, each an outlier with probability alpha.
  LabeledSample draw_dataset(RngStream& rng) const;

 private:
  MixtureModelSpec spec_;
  GridPtr grid_;
  GaussianPerturbation eps_;
};

/// Zero-mean Gaussian process draw with covariance 0.25 exp(-(s - s')^2).
Curve gen_eps(const GridPtr& grid, RngStream& rng);

LabeledSample gen_dataset(const MixtureModelSpec& spec, RngStream& rng);

/// R datasets; dataset r uses its own sub-stream of (master_seed, model, alpha)
/// and so does not depend on how many others are generated.
std::vector<LabeledSample> gen_study_inputs(MixtureModel model, double alpha, std::size_t R, std::uint64_t master_seed,
                                            std::size_t n = 50, NoiseMode noise = NoiseMode::PerPoint);

/// Sub-stream for replication r of (model, alpha) under master_seed.
RngStream replication_stream(MixtureModel model, double alpha, std::uint64_t master_seed, std::size_t r);

}  // namespace kfsd

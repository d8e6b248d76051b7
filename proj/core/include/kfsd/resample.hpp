#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "kfsd/fdata.hpp"
#include "kfsd/rng.hpp"

namespace kfsd {

struct SmoothingConfig {
  double gamma = 0.05;
  // Eigenvalues below clip_ratio * lambda_max are set to zero.
  double clip_ratio = 1e-10;
};

/// Zero-mean Gaussian draws with covariance gamma * cov.
///
/// Factorizes cov once by symmetric eigendecomposition with small and negative
/// eigenvalues clipped to zero, so rank-deficient sample covariances (n - 1 < m)
/// are handled without a positive-definite factorization.
class GaussianPerturbation {
 public:
  GaussianPerturbation(const Eigen::MatrixXd& cov, double gamma, double clip_ratio = 1e-10);

  Eigen::VectorXd draw(RngStream& rng) const;
  void add_to(std::span<double> curve, RngStream& rng) const;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(factor_.rows()); }
  std::size_t rank() const noexcept { return rank_; }
  /// Columns of V * sqrt(gamma * Lambda) for the retained eigenpairs.
  const Eigen::MatrixXd& factor() const noexcept { return factor_; }

 private:
  Eigen::MatrixXd factor_;
  std::size_t rank_ = 0;
};

/// One perturbation curve zeta ~ N(0, gamma * cov) on the given grid.
Curve gaussian_perturbation(const GridPtr& grid, const Eigen::MatrixXd& cov, double gamma, RngStream& rng);

enum class SchemeKind { Simple, Trimmed, Weighted };

struct ResampleScheme {
  SchemeKind kind = SchemeKind::Simple;
  double alpha_trim = 0.0;
  std::vector<double> depth_scores;

  static ResampleScheme simple() { return {}; }
  static ResampleScheme trimmed(double alpha, std::vector<double> scores) {
    return {SchemeKind::Trimmed, alpha, std::move(scores)};
  }
  static ResampleScheme weighted(std::vector<double> scores) { return {SchemeKind::Weighted, 0.0, std::move(scores)}; }
};

/// Indices kept after deleting the ceil(alpha * n) least-deep curves; depth
/// ties are removed lower index first. Ascending index order.
std::vector<std::size_t> trimmed_pool(const std::vector<double>& depth_scores, double alpha);

struct ResampleResult {
  FunctionalSample sample;
  std::vector<std::size_t> base_indices;  // source curve of each drawn curve
};

/// Draws n_z base curves with replacement under the scheme and adds an
/// independent perturbation to each. The covariance always comes from the full
/// input sample.
ResampleResult resample(const FunctionalSample& sample, const ResampleScheme& scheme, std::size_t n_z,
                        const SmoothingConfig& smoothing, RngStream& rng);

/// Same, reusing a perturbation factor already built from the sample covariance.
ResampleResult resample(const FunctionalSample& sample, const ResampleScheme& scheme, std::size_t n_z,
                        const GaussianPerturbation& perturbation, RngStream& rng);

}  // namespace kfsd

#include "kfsd/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "kfsd/error.hpp"

namespace kfsd {

GaussianPerturbation::GaussianPerturbation(const Eigen::MatrixXd& cov, double gamma, double clip_ratio) {
  if (cov.rows() != cov.cols() || cov.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "covariance must be a non-empty square matrix");
  }
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "smoothing gamma must be positive");
  if (!cov.allFinite()) throw Error(ErrorCode::NonFiniteValue, "covariance has non-finite entries");
  const double scale = std::max(cov.cwiseAbs().maxCoeff(), 1e-300);
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorCode::NonSymmetricCovariance, "covariance matrix is not symmetric");
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (cov + cov.transpose()));
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::NumericalBreakdown, "eigendecomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double lambda_max = lambda.maxCoeff();
  const double cutoff = clip_ratio * std::max(lambda_max, 0.0);

  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda(k) > cutoff && lambda(k) > 0.0) kept.push_back(k);
  }
  rank_ = kept.size();
  factor_ = Eigen::MatrixXd::Zero(cov.rows(), std::max<Eigen::Index>(static_cast<Eigen::Index>(rank_), 1));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    factor_.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(kept[c]) * std::sqrt(gamma * lambda(kept[c]));
  }
}

Eigen::VectorXd GaussianPerturbation::draw(RngStream& rng) const {
  Eigen::VectorXd xi(factor_.cols());
  for (Eigen::Index k = 0; k < xi.size(); ++k) xi(k) = rng.normal();
  return factor_ * xi;
}

void GaussianPerturbation::add_to(std::span<double> curve, RngStream& rng) const {
  if (curve.size() != dimension()) throw Error(ErrorCode::DimensionMismatch, "perturbation length mismatch");
  const Eigen::VectorXd z = draw(rng);
  for (std::size_t k = 0; k < curve.size(); ++k) curve[k] += z(static_cast<Eigen::Index>(k));
}

Curve gaussian_perturbation(const GridPtr& grid, const Eigen::MatrixXd& cov, double gamma, RngStream& rng) {
  if (!grid || grid->size() != static_cast<std::size_t>(cov.rows())) {
    throw Error(ErrorCode::DimensionMismatch, "covariance does not match grid");
  }
  return Curve(grid, GaussianPerturbation(cov, gamma).draw(rng));
}

std::vector<std::size_t> trimmed_pool(const std::vector<double>& depth_scores, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidArgument, "trimming proportion must lie in (0, 1)");
  const std::size_t n = depth_scores.size();
  auto drop = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n) - 1e-9));
  if (n < drop + 2) {
    throw Error(ErrorCode::EmptyPool, "trimming " + std::to_string(drop) + " of " + std::to_string(n) +
                                          " curves leaves fewer than 2");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return depth_scores[a] < depth_scores[b]; });
  std::vector<std::size_t> pool(order.begin() + static_cast<std::ptrdiff_t>(drop), order.end());
  std::sort(pool.begin(), pool.end());
  return pool;
}

namespace {

std::vector<std::size_t> draw_bases(std::size_t n, const ResampleScheme& scheme, std::size_t n_z, RngStream& rng) {
  std::vector<std::size_t> bases(n_z);
  switch (scheme.kind) {
    case SchemeKind::Simple: {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (auto& b : bases) b = pick(rng);
      break;
    }
    case SchemeKind::Trimmed: {
      if (scheme.depth_scores.size() != n) throw Error(ErrorCode::DimensionMismatch, "one depth score per curve");
      const auto pool = trimmed_pool(scheme.depth_scores, scheme.alpha_trim);
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      for (auto& b : bases) b = pool[pick(rng)];
      break;
    }
    case SchemeKind::Weighted: {
      if (scheme.depth_scores.size() != n) throw Error(ErrorCode::DimensionMismatch, "one depth score per curve");
      double total = 0.0;
      for (double w : scheme.depth_scores) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::InvalidArgument, "weights must be finite and >= 0");
        total += w;
      }
      if (!(total > 0.0)) throw Error(ErrorCode::ZeroWeightSum, "all resampling weights are zero");
      std::discrete_distribution<std::size_t> pick(scheme.depth_scores.begin(), scheme.depth_scores.end());
      for (auto& b : bases) b = pick(rng);
      break;
    }
  }
  return bases;
}

}  // namespace

ResampleResult resample(const FunctionalSample& sample, const ResampleScheme& scheme, std::size_t n_z,
                        const GaussianPerturbation& perturbation, RngStream& rng) {
  if (n_z < 1) throw Error(ErrorCode::InvalidArgument, "n_Z must be at least 1");
  if (perturbation.dimension() != sample.points()) {
    throw Error(ErrorCode::DimensionMismatch, "perturbation dimension does not match grid");
  }
  auto bases = draw_bases(sample.size(), scheme, n_z, rng);
  RowMatrix z(static_cast<Eigen::Index>(n_z), static_cast<Eigen::Index>(sample.points()));
  for (std::size_t j = 0; j < n_z; ++j) {
    const auto row = static_cast<Eigen::Index>(j);
    z.row(row) = sample.values().row(static_cast<Eigen::Index>(bases[j]));
    z.row(row) += perturbation.draw(rng).transpose();
  }
  return ResampleResult{FunctionalSample(sample.grid(), std::move(z)), std::move(bases)};
}

ResampleResult resample(const FunctionalSample& sample, const ResampleScheme& scheme, std::size_t n_z,
                        const SmoothingConfig& smoothing, RngStream& rng) {
  // A single curve has no spread; its covariance is the zero matrix.
  const Eigen::MatrixXd cov = sample.size() >= 2
                                  ? sample_covariance(sample)
                                  : Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sample.points()),
                                                          static_cast<Eigen::Index>(sample.points()));
  const GaussianPerturbation perturbation(cov, smoothing.gamma, smoothing.clip_ratio);
  return resample(sample, scheme, n_z, perturbation, rng);
}

}  // namespace kfsd

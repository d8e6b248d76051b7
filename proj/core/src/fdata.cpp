#include "kfsd/fdata.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kfsd/error.hpp"

namespace kfsd {

namespace {

constexpr double kEquidistantRelTol = 1e-9;

void require_same_grid(const GridPtr& a, const GridPtr& b) {
  if (!same_grid(a, b)) throw Error(ErrorCode::DimensionMismatch, "curves live on different grids");
}

}  // namespace

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  const std::size_t m = points_.size();
  if (m < 2) throw Error(ErrorCode::DimensionMismatch, "grid needs at least 2 points");
  for (double p : points_) {
    if (!std::isfinite(p)) throw Error(ErrorCode::NonFiniteValue, "grid abscissa is not finite");
  }
  step_ = (points_.back() - points_.front()) / static_cast<double>(m - 1);
  if (!(step_ > 0.0)) throw Error(ErrorCode::NotEquidistant, "grid must be strictly increasing");
  for (std::size_t k = 1; k < m; ++k) {
    const double h = points_[k] - points_[k - 1];
    if (!(h > 0.0)) throw Error(ErrorCode::NotEquidistant, "grid must be strictly increasing");
    if (std::abs(h - step_) > kEquidistantRelTol * std::max(step_, std::abs(points_[k]))) {
      throw Error(ErrorCode::NotEquidistant, "grid spacing differs at index " + std::to_string(k));
    }
  }
  weights_.assign(m, step_);
  weights_.front() = 0.5 * step_;
  weights_.back() = 0.5 * step_;
}

Grid Grid::equidistant(double lo, double hi, std::size_t m) {
  if (m < 2) throw Error(ErrorCode::DimensionMismatch, "grid needs at least 2 points");
  std::vector<double> pts(m);
  for (std::size_t k = 0; k < m; ++k) {
    pts[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(m - 1);
  }
  return Grid(std::move(pts));
}

bool same_grid(const GridPtr& a, const GridPtr& b) noexcept {
  if (a == b) return true;
  return a && b && *a == *b;
}

Curve::Curve(GridPtr grid, Eigen::VectorXd values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw Error(ErrorCode::InvalidArgument, "curve without grid");
  if (static_cast<std::size_t>(values_.size()) != grid_->size()) {
    throw Error(ErrorCode::DimensionMismatch, "curve length " + std::to_string(values_.size()) +
                                                  " != grid size " + std::to_string(grid_->size()));
  }
  if (!values_.allFinite()) throw Error(ErrorCode::NonFiniteValue, "curve has non-finite values");
}

Curve::Curve(GridPtr grid, std::span<const double> values)
    : Curve(std::move(grid), Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
                                 values.data(), static_cast<Eigen::Index>(values.size())))) {}

FunctionalSample::FunctionalSample(GridPtr grid, RowMatrix values, std::vector<Label> labels)
    : grid_(std::move(grid)), values_(std::move(values)), labels_(std::move(labels)) {
  if (!grid_) throw Error(ErrorCode::InvalidArgument, "sample without grid");
  if (values_.rows() < 1) throw Error(ErrorCode::DegenerateSample, "sample has no curves");
  if (static_cast<std::size_t>(values_.cols()) != grid_->size()) {
    throw Error(ErrorCode::DimensionMismatch, "row length " + std::to_string(values_.cols()) +
                                                  " != grid size " + std::to_string(grid_->size()));
  }
  if (!labels_.empty() && labels_.size() != size()) {
    throw Error(ErrorCode::DimensionMismatch, "label count does not match curve count");
  }
}

FunctionalSample FunctionalSample::without(std::span<const std::size_t> drop) const {
  std::vector<bool> gone(size(), false);
  for (std::size_t i : drop) {
    if (i >= size()) throw Error(ErrorCode::InvalidArgument, "curve index out of range");
    gone[i] = true;
  }
  std::vector<std::size_t> keep;
  keep.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (!gone[i]) keep.push_back(i);
  }
  return subset(keep);
}

FunctionalSample FunctionalSample::subset(std::span<const std::size_t> keep) const {
  RowMatrix out(static_cast<Eigen::Index>(keep.size()), values_.cols());
  std::vector<Label> labels;
  if (has_labels()) labels.reserve(keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    if (keep[r] >= size()) throw Error(ErrorCode::InvalidArgument, "curve index out of range");
    out.row(static_cast<Eigen::Index>(r)) = values_.row(static_cast<Eigen::Index>(keep[r]));
    if (has_labels()) labels.push_back(labels_[keep[r]]);
  }
  return FunctionalSample(grid_, std::move(out), std::move(labels));
}

FunctionalSample build_sample(const RowMatrix& matrix, GridPtr grid) {
  if (!grid) throw Error(ErrorCode::InvalidArgument, "sample without grid");
  if (static_cast<std::size_t>(matrix.cols()) != grid->size()) {
    throw Error(ErrorCode::DimensionMismatch, "row length " + std::to_string(matrix.cols()) +
                                                  " != grid size " + std::to_string(grid->size()));
  }
  if (matrix.rows() < 2) throw Error(ErrorCode::DegenerateSample, "a sample needs at least 2 curves");
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    if (!matrix.row(i).allFinite()) {
      throw Error(ErrorCode::NonFiniteValue, "row " + std::to_string(i) + " has a missing or non-finite value");
    }
  }
  return FunctionalSample(std::move(grid), matrix);
}

double l2_inner(std::span<const double> a, std::span<const double> b, const Grid& grid) {
  if (a.size() != grid.size() || b.size() != grid.size()) {
    throw Error(ErrorCode::DimensionMismatch, "curve length does not match grid");
  }
  const auto w = grid.weights();
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += w[k] * a[k] * b[k];
  return s;
}

double l2_squared_distance(std::span<const double> a, std::span<const double> b, const Grid& grid) {
  if (a.size() != grid.size() || b.size() != grid.size()) {
    throw Error(ErrorCode::DimensionMismatch, "curve length does not match grid");
  }
  const auto w = grid.weights();
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += w[k] * d * d;
  }
  return s;
}

double l2_distance(const Curve& a, const Curve& b) {
  require_same_grid(a.grid(), b.grid());
  return std::sqrt(l2_squared_distance(a.span(), b.span(), *a.grid()));
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd d) : d_(std::move(d)) {
  const auto n = d_.rows();
  if (d_.cols() != n) throw Error(ErrorCode::DimensionMismatch, "distance matrix must be square");
  sorted_.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) sorted_.push_back(d_(i, j));
  }
  std::sort(sorted_.begin(), sorted_.end());
}

DistanceMatrix pairwise_distances(const FunctionalSample& sample) {
  const std::size_t n = sample.size();
  const Grid& grid = *sample.grid();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::sqrt(l2_squared_distance(sample.row(i), sample.row(j), grid));
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return DistanceMatrix(std::move(d));
}

double distance_percentile(const DistanceMatrix& d, double p) {
  if (d.size() < 2) throw Error(ErrorCode::DegenerateSample, "percentile needs at least 2 curves");
  if (!(p > 0.0 && p <= 100.0)) throw Error(ErrorCode::InvalidArgument, "percentile must lie in (0, 100]");
  const auto& pairs = d.sorted_pairs();
  if (pairs.back() == 0.0) throw Error(ErrorCode::DegenerateSample, "all pairwise distances are zero");
  const double count = static_cast<double>(pairs.size());
  // Nearest rank: ceil(p N / 100), guarded against p N / 100 landing a hair above an integer.
  auto rank = static_cast<std::size_t>(std::ceil(p * count / 100.0 - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, pairs.size());
  return pairs[rank - 1];
}

Eigen::MatrixXd sample_covariance(const FunctionalSample& sample) {
  const std::size_t n = sample.size();
  if (n < 2) throw Error(ErrorCode::DegenerateSample, "covariance needs at least 2 curves");
  const RowMatrix& y = sample.values();
  const Eigen::RowVectorXd mean = y.colwise().mean();
  const RowMatrix centered = y.rowwise() - mean;
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  // Symmetric by construction; average away any asymmetry from the product kernel.
  return 0.5 * (cov + cov.transpose());
}

}  // namespace kfsd

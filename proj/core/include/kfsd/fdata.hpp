#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace kfsd {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Strictly increasing, equidistant abscissae shared by every curve of a sample.
class Grid {
 public:
  explicit Grid(std::vector<double> points);

  /// m equidistant points covering [lo, hi] inclusive.
  static Grid equidistant(double lo, double hi, std::size_t m);

  std::size_t size() const noexcept { return points_.size(); }
  double step() const noexcept { return step_; }
  double front() const noexcept { return points_.front(); }
  double back() const noexcept { return points_.back(); }
  std::span<const double> points() const noexcept { return points_; }
  double operator[](std::size_t k) const noexcept { return points_[k]; }

  // Trapezoidal quadrature weights; sum(w .* f) approximates the integral of f.
  std::span<const double> weights() const noexcept { return weights_; }

  bool operator==(const Grid& other) const noexcept { return points_ == other.points_; }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
  double step_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

bool same_grid(const GridPtr& a, const GridPtr& b) noexcept;

class Curve {
 public:
  Curve(GridPtr grid, Eigen::VectorXd values);
  Curve(GridPtr grid, std::span<const double> values);

  const GridPtr& grid() const noexcept { return grid_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  std::span<const double> span() const noexcept { return {values_.data(), static_cast<std::size_t>(values_.size())}; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }

 private:
  GridPtr grid_;
  Eigen::VectorXd values_;
};

enum class Label { Unknown, Normal, Outlier };

/// n curves on one shared grid, stored row-wise (curve i is row i).
class FunctionalSample {
 public:
  FunctionalSample(GridPtr grid, RowMatrix values, std::vector<Label> labels = {});

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t points() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  const GridPtr& grid() const noexcept { return grid_; }
  const RowMatrix& values() const noexcept { return values_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * points(), points()};
  }
  Curve curve(std::size_t i) const { return Curve(grid_, row(i)); }

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  /// Sample with the listed curves removed (order of the rest preserved).
  FunctionalSample without(std::span<const std::size_t> drop) const;
  /// Sample made of the listed curves, in the given order.
  FunctionalSample subset(std::span<const std::size_t> keep) const;

 private:
  GridPtr grid_;
  RowMatrix values_;
  std::vector<Label> labels_;
};

/// Validating constructor for user-supplied data: n >= 2, rows of grid length, finite values.
FunctionalSample build_sample(const RowMatrix& matrix, GridPtr grid);

/// Trapezoidal L2 inner product and norm on the shared grid.
double l2_inner(std::span<const double> a, std::span<const double> b, const Grid& grid);
double l2_squared_distance(std::span<const double> a, std::span<const double> b, const Grid& grid);
double l2_distance(const Curve& a, const Curve& b);

/// Symmetric n x n matrix of pairwise L2 distances with an exact zero diagonal.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(Eigen::MatrixXd d);

  std::size_t size() const noexcept { return static_cast<std::size_t>(d_.rows()); }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return d_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& matrix() const noexcept { return d_; }

  /// Upper-triangle (i < j) distances in ascending order.
  const std::vector<double>& sorted_pairs() const noexcept { return sorted_; }

 private:
  Eigen::MatrixXd d_;
  std::vector<double> sorted_;
};

DistanceMatrix pairwise_distances(const FunctionalSample& sample);

/// Nearest-rank percentile, p in (0, 100], of the n(n-1)/2 distinct-pair distances.
double distance_percentile(const DistanceMatrix& d, double p);

/// Unbiased (n-1 divisor) covariance of the discretized curves.
Eigen::MatrixXd sample_covariance(const FunctionalSample& sample);

}  // namespace kfsd

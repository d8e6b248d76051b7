#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "kfsd/fdata.hpp"

namespace kfsd {

enum class DepthId { FSD, KFSD, HMD, FMD, MBD, RTD, IDD };

std::string_view to_string(DepthId id) noexcept;
DepthId parse_depth_id(std::string_view name);  // case-insensitive, throws InvalidArgument

enum class KernelKind { Gaussian, Linear };

struct KernelConfig {
  KernelKind kind = KernelKind::Gaussian;
  double sigma = 1.0;  // unused for Linear
};

/// exp(-||a - b||^2 / sigma^2).
double gaussian_kernel(const Curve& a, const Curve& b, double sigma);

/// Squared distance between feature-space images, as a function of the
/// squared L2 distance. Gaussian: 2 - 2 exp(-d2 / sigma^2); linear: d2.
double feature_squared_distance(const KernelConfig& kernel, double squared_l2);

/// Unit-norm random directions shared by every curve of a sample.
class ProjectionSet {
 public:
  /// R directions with i.i.d. N(0, 1) values at each grid point, scaled to unit L2 norm.
  static ProjectionSet draw(const GridPtr& grid, std::size_t count, std::uint64_t seed);

  std::size_t size() const noexcept { return static_cast<std::size_t>(directions_.rows()); }
  std::uint64_t seed() const noexcept { return seed_; }
  const RowMatrix& directions() const noexcept { return directions_; }
  const GridPtr& grid() const noexcept { return grid_; }

  /// <x, u_r> for every direction r.
  Eigen::VectorXd project(std::span<const double> x) const;

 private:
  ProjectionSet(GridPtr grid, RowMatrix directions, std::uint64_t seed)
      : grid_(std::move(grid)), directions_(std::move(directions)), seed_(seed) {}

  GridPtr grid_;
  RowMatrix directions_;
  std::uint64_t seed_;
};

// Scalar depths of x relative to a sample. For FSD/KFSD, sample curves at zero
// L2 distance from x are left out and the divisor counts the remaining curves.
double fsd(const Curve& x, const FunctionalSample& sample);
double kfsd(const Curve& x, const FunctionalSample& sample, const KernelConfig& kernel);
double hmd(const Curve& x, const FunctionalSample& sample, double h);
double fmd(const Curve& x, const FunctionalSample& sample);
double mbd(const Curve& x, const FunctionalSample& sample);
double rtd(const Curve& x, const FunctionalSample& sample, const ProjectionSet& proj);
double idd(const Curve& x, const FunctionalSample& sample, const ProjectionSet& proj);

/// How to derive depth parameters from a sample.
struct DepthSpec {
  DepthId id = DepthId::KFSD;
  double kfsd_percentile = 50.0;
  double hmd_percentile = 15.0;
  std::size_t projections = 50;
  std::uint64_t projection_seed = 0;
  KernelKind kernel = KernelKind::Gaussian;
};

/// Frozen parameters of a depth evaluation.
struct DepthParams {
  DepthId id = DepthId::KFSD;
  KernelConfig kernel;
  double kfsd_percentile = 0.0;  // percentile kernel.sigma came from, 0 when set directly
  double hmd_bandwidth = 0.0;
  double hmd_percentile = 0.0;
  std::shared_ptr<const ProjectionSet> projections;
};

DepthParams resolve_depth_params(const DepthSpec& spec, const FunctionalSample& sample, const DistanceMatrix& dist);
DepthParams resolve_depth_params(const DepthSpec& spec, const FunctionalSample& sample);

struct DepthScores {
  DepthId id = DepthId::KFSD;
  DepthParams params;
  std::vector<double> values;
};

/// Depth evaluator bound to a reference sample; precomputes what every query
/// shares (kernel Gram, sorted marginals, projected reference curves).
class ReferenceDepth {
 public:
  ReferenceDepth(const FunctionalSample& reference, DepthParams params);

  /// Depth of x relative to the reference, optionally leaving one reference curve out.
  double depth(std::span<const double> x, std::optional<std::size_t> exclude = std::nullopt) const;

  /// Depth of reference curve i relative to the full reference.
  double member_depth(std::size_t i) const;

  std::vector<double> depths(const FunctionalSample& queries) const;

  const DepthParams& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return reference_->size(); }

 private:
  double kfsd_depth(std::span<const double> sq_l2, std::optional<std::size_t> exclude) const;
  double fsd_depth(std::span<const double> x, std::optional<std::size_t> exclude) const;

  std::shared_ptr<const FunctionalSample> reference_;
  DepthParams params_;
  Eigen::MatrixXd sq_dist_;      // pairwise squared L2 distances
  Eigen::MatrixXd feature_sq_;   // kernel-induced squared distances (KFSD)
  RowMatrix sorted_columns_;     // per grid point, sorted sample values (m x n)
  RowMatrix sorted_projections_; // per direction, sorted projections (R x n)
};

DepthScores depth_all(const FunctionalSample& sample, const DepthParams& params);

}  // namespace kfsd

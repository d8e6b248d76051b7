#include "kfsd/depths.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "kfsd/error.hpp"
#include "kfsd/rng.hpp"

namespace kfsd {

namespace {

// Feature-space distances below this are numerically indistinguishable from zero.
constexpr double kFeatureDistanceFloor = 1e-12;

const double kHmdScale = 2.0 / std::sqrt(2.0 * std::numbers::pi);

void check_query(const Curve& x, const FunctionalSample& sample) {
  if (!same_grid(x.grid(), sample.grid())) {
    throw Error(ErrorCode::DimensionMismatch, "query curve and sample use different grids");
  }
}

double choose2(std::size_t k) { return 0.5 * static_cast<double>(k) * static_cast<double>(k > 0 ? k - 1 : 0); }

// #{v <= x} and #{v >= x} in an ascending range.
std::pair<std::size_t, std::size_t> count_le_ge(std::span<const double> sorted, double x) {
  const auto le = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
  const auto lt = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
  return {le, sorted.size() - lt};
}

std::span<const double> row_span(const RowMatrix& m, Eigen::Index r) {
  return {m.data() + r * m.cols(), static_cast<std::size_t>(m.cols())};
}

}  // namespace

std::string_view to_string(DepthId id) noexcept {
  switch (id) {
    case DepthId::FSD: return "FSD";
    case DepthId::KFSD: return "KFSD";
    case DepthId::HMD: return "HMD";
    case DepthId::FMD: return "FMD";
    case DepthId::MBD: return "MBD";
    case DepthId::RTD: return "RTD";
    case DepthId::IDD: return "IDD";
  }
  return "?";
}

DepthId parse_depth_id(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (DepthId id : {DepthId::FSD, DepthId::KFSD, DepthId::HMD, DepthId::FMD, DepthId::MBD, DepthId::RTD,
                     DepthId::IDD}) {
    if (upper == to_string(id)) return id;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown depth '" + std::string(name) + "'");
}

double feature_squared_distance(const KernelConfig& kernel, double squared_l2) {
  if (kernel.kind == KernelKind::Linear) return squared_l2;
  if (!(kernel.sigma > 0.0)) throw Error(ErrorCode::NonPositiveSigma, "Gaussian kernel needs sigma > 0");
  // expm1 keeps precision when the distance is small relative to sigma.
  return -2.0 * std::expm1(-squared_l2 / (kernel.sigma * kernel.sigma));
}

double gaussian_kernel(const Curve& a, const Curve& b, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::NonPositiveSigma, "Gaussian kernel needs sigma > 0");
  const double d = l2_distance(a, b);
  return std::exp(-(d * d) / (sigma * sigma));
}

ProjectionSet ProjectionSet::draw(const GridPtr& grid, std::size_t count, std::uint64_t seed) {
  if (!grid) throw Error(ErrorCode::InvalidArgument, "projection set without grid");
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "need at least one projection");
  RngStream rng(seed, 0x70726f6aULL);
  const std::size_t m = grid->size();
  RowMatrix dirs(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(m));
  for (Eigen::Index r = 0; r < dirs.rows(); ++r) {
    for (Eigen::Index k = 0; k < dirs.cols(); ++k) dirs(r, k) = rng.normal();
    const auto u = row_span(dirs, r);
    const double norm = std::sqrt(l2_inner(u, u, *grid));
    dirs.row(r) /= norm;
  }
  return ProjectionSet(grid, std::move(dirs), seed);
}

Eigen::VectorXd ProjectionSet::project(std::span<const double> x) const {
  Eigen::VectorXd out(directions_.rows());
  for (Eigen::Index r = 0; r < directions_.rows(); ++r) out(r) = l2_inner(x, row_span(directions_, r), *grid_);
  return out;
}

DepthParams resolve_depth_params(const DepthSpec& spec, const FunctionalSample& sample, const DistanceMatrix& dist) {
  DepthParams p;
  p.id = spec.id;
  switch (spec.id) {
    case DepthId::KFSD:
      p.kernel.kind = spec.kernel;
      if (spec.kernel == KernelKind::Gaussian) {
        p.kfsd_percentile = spec.kfsd_percentile;
        p.kernel.sigma = distance_percentile(dist, spec.kfsd_percentile);
      }
      break;
    case DepthId::HMD:
      p.hmd_percentile = spec.hmd_percentile;
      p.hmd_bandwidth = distance_percentile(dist, spec.hmd_percentile);
      break;
    case DepthId::RTD:
    case DepthId::IDD:
      p.projections = std::make_shared<const ProjectionSet>(
          ProjectionSet::draw(sample.grid(), spec.projections, spec.projection_seed));
      break;
    case DepthId::FSD:
    case DepthId::FMD:
    case DepthId::MBD:
      break;
  }
  return p;
}

DepthParams resolve_depth_params(const DepthSpec& spec, const FunctionalSample& sample) {
  if (spec.id == DepthId::KFSD || spec.id == DepthId::HMD) {
    return resolve_depth_params(spec, sample, pairwise_distances(sample));
  }
  return resolve_depth_params(spec, sample, DistanceMatrix(Eigen::MatrixXd::Zero(0, 0)));
}

ReferenceDepth::ReferenceDepth(const FunctionalSample& reference, DepthParams params)
    : reference_(std::make_shared<const FunctionalSample>(reference)), params_(std::move(params)) {
  const std::size_t n = reference_->size();
  const std::size_t m = reference_->points();
  const Grid& grid = *reference_->grid();
  const auto ni = static_cast<Eigen::Index>(n);

  switch (params_.id) {
    case DepthId::KFSD:
    case DepthId::HMD: {
      if (params_.id == DepthId::KFSD && params_.kernel.kind == KernelKind::Gaussian && !(params_.kernel.sigma > 0.0)) {
        throw Error(ErrorCode::NonPositiveSigma, "KFSD needs sigma > 0");
      }
      if (params_.id == DepthId::HMD && !(params_.hmd_bandwidth > 0.0)) {
        throw Error(ErrorCode::NonPositiveBandwidth, "HMD needs h > 0");
      }
      sq_dist_ = Eigen::MatrixXd::Zero(ni, ni);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double d2 = l2_squared_distance(reference_->row(i), reference_->row(j), grid);
          sq_dist_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d2;
          sq_dist_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = d2;
        }
      }
      if (params_.id == DepthId::KFSD) {
        feature_sq_ = sq_dist_.unaryExpr([this](double d2) { return feature_squared_distance(params_.kernel, d2); });
      }
      break;
    }
    case DepthId::FMD:
    case DepthId::MBD: {
      sorted_columns_ = reference_->values().transpose();
      for (std::size_t k = 0; k < m; ++k) {
        auto* first = sorted_columns_.data() + k * n;
        std::sort(first, first + n);
      }
      break;
    }
    case DepthId::RTD:
    case DepthId::IDD: {
      if (!params_.projections) throw Error(ErrorCode::InvalidArgument, "RTD/IDD need a projection set");
      if (!same_grid(params_.projections->grid(), reference_->grid())) {
        throw Error(ErrorCode::DimensionMismatch, "projection set uses a different grid");
      }
      const auto R = static_cast<Eigen::Index>(params_.projections->size());
      sorted_projections_.resize(R, ni);
      for (std::size_t i = 0; i < n; ++i) {
        sorted_projections_.col(static_cast<Eigen::Index>(i)) = params_.projections->project(reference_->row(i));
      }
      for (Eigen::Index r = 0; r < R; ++r) {
        auto* first = sorted_projections_.data() + r * ni;
        std::sort(first, first + n);
      }
      break;
    }
    case DepthId::FSD:
      break;
  }
  if ((params_.id == DepthId::MBD || params_.id == DepthId::IDD) && n < 2) {
    throw Error(ErrorCode::DegenerateSample, std::string(to_string(params_.id)) + " needs at least 2 curves");
  }
}

double ReferenceDepth::kfsd_depth(std::span<const double> sq_l2, std::optional<std::size_t> exclude) const {
  const std::size_t n = reference_->size();
  std::vector<std::size_t> active;
  std::vector<double> fq;  // squared feature distance x -> y_i
  std::vector<double> delta;
  active.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (exclude && *exclude == i) continue;
    if (sq_l2[i] == 0.0) continue;  // y_i == x
    const double f = feature_squared_distance(params_.kernel, sq_l2[i]);
    const double d = std::sqrt(std::max(f, 0.0));
    if (d < kFeatureDistanceFloor) {
      throw Error(ErrorCode::NumericalBreakdown, "feature-space distance underflows for curve " + std::to_string(i));
    }
    active.push_back(i);
    fq.push_back(f);
    delta.push_back(d);
  }
  if (active.empty()) throw Error(ErrorCode::DegenerateSample, "no sample curve distinct from the query");

  // Each term is the cosine between feature-space unit vectors (x - y_i) and
  // (x - y_j); the numerator kappa(x,x) + kappa(y_i,y_j) - kappa(x,y_i) -
  // kappa(x,y_j) is written through the polarization identity on distances.
  const std::size_t a = active.size();
  double total = 0.0;
  for (std::size_t p = 0; p < a; ++p) {
    total += 1.0;
    const auto ip = static_cast<Eigen::Index>(active[p]);
    for (std::size_t q = p + 1; q < a; ++q) {
      const auto iq = static_cast<Eigen::Index>(active[q]);
      const double numer = 0.5 * (fq[p] + fq[q] - feature_sq_(ip, iq));
      total += 2.0 * numer / (delta[p] * delta[q]);
    }
  }
  const double depth = 1.0 - std::sqrt(std::max(total, 0.0)) / static_cast<double>(a);
  return std::clamp(depth, 0.0, 1.0);
}

double ReferenceDepth::fsd_depth(std::span<const double> x, std::optional<std::size_t> exclude) const {
  const std::size_t n = reference_->size();
  const Grid& grid = *reference_->grid();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(x.size()));
  std::size_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (exclude && *exclude == i) continue;
    const auto y = reference_->row(i);
    const double norm = std::sqrt(l2_squared_distance(x, y, grid));
    if (norm == 0.0) continue;
    for (std::size_t k = 0; k < x.size(); ++k) sum(static_cast<Eigen::Index>(k)) += (x[k] - y[k]) / norm;
    ++used;
  }
  if (used == 0) throw Error(ErrorCode::DegenerateSample, "no sample curve distinct from the query");
  const std::span<const double> s(sum.data(), x.size());
  const double depth = 1.0 - std::sqrt(l2_inner(s, s, grid)) / static_cast<double>(used);
  return std::clamp(depth, 0.0, 1.0);
}

double ReferenceDepth::depth(std::span<const double> x, std::optional<std::size_t> exclude) const {
  const std::size_t n = reference_->size();
  const std::size_t m = reference_->points();
  const Grid& grid = *reference_->grid();
  if (x.size() != m) throw Error(ErrorCode::DimensionMismatch, "query length does not match grid");

  switch (params_.id) {
    case DepthId::FSD:
      return fsd_depth(x, exclude);
    case DepthId::KFSD: {
      std::vector<double> sq(n);
      for (std::size_t i = 0; i < n; ++i) sq[i] = l2_squared_distance(x, reference_->row(i), grid);
      return kfsd_depth(sq, exclude);
    }
    case DepthId::HMD: {
      const double h = params_.hmd_bandwidth;
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (exclude && *exclude == i) continue;
        s += kHmdScale * std::exp(-l2_squared_distance(x, reference_->row(i), grid) / (2.0 * h * h));
      }
      return s;
    }
    case DepthId::FMD: {
      if (exclude) throw Error(ErrorCode::InvalidArgument, "leave-one-out is only supported for FSD/KFSD/HMD");
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const auto col = row_span(sorted_columns_, static_cast<Eigen::Index>(k));
        const double cdf = static_cast<double>(count_le_ge(col, x[k]).first) / static_cast<double>(n);
        s += 1.0 - std::abs(0.5 - cdf);
      }
      return s / static_cast<double>(m);
    }
    case DepthId::MBD: {
      if (exclude) throw Error(ErrorCode::InvalidArgument, "leave-one-out is only supported for FSD/KFSD/HMD");
      const double pairs = choose2(n);
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const auto col = row_span(sorted_columns_, static_cast<Eigen::Index>(k));
        const auto [le, ge] = count_le_ge(col, x[k]);
        const std::size_t below = n - ge;  // strictly below
        const std::size_t above = n - le;  // strictly above
        s += (pairs - choose2(below) - choose2(above)) / pairs;
      }
      return s / static_cast<double>(m);
    }
    case DepthId::RTD:
    case DepthId::IDD: {
      if (exclude) throw Error(ErrorCode::InvalidArgument, "leave-one-out is only supported for FSD/KFSD/HMD");
      const Eigen::VectorXd px = params_.projections->project(x);
      const auto R = params_.projections->size();
      if (params_.id == DepthId::RTD) {
        double best = 1.0;
        for (std::size_t r = 0; r < R; ++r) {
          const auto [le, ge] = count_le_ge(row_span(sorted_projections_, static_cast<Eigen::Index>(r)),
                                            px(static_cast<Eigen::Index>(r)));
          best = std::min(best, static_cast<double>(std::min(le, ge)) / static_cast<double>(n));
        }
        return best;
      }
      const double pairs = choose2(n);
      double s = 0.0;
      for (std::size_t r = 0; r < R; ++r) {
        const auto [le, ge] = count_le_ge(row_span(sorted_projections_, static_cast<Eigen::Index>(r)),
                                          px(static_cast<Eigen::Index>(r)));
        s += (pairs - choose2(n - ge) - choose2(n - le)) / pairs;
      }
      return s / static_cast<double>(R);
    }
  }
  return 0.0;
}

double ReferenceDepth::member_depth(std::size_t i) const {
  if (i >= reference_->size()) throw Error(ErrorCode::InvalidArgument, "curve index out of range");
  if (params_.id == DepthId::KFSD) {
    const auto col = sq_dist_.col(static_cast<Eigen::Index>(i));
    return kfsd_depth({col.data(), static_cast<std::size_t>(col.size())}, std::nullopt);
  }
  if (params_.id == DepthId::HMD) {
    const double h = params_.hmd_bandwidth;
    double s = 0.0;
    for (Eigen::Index j = 0; j < sq_dist_.rows(); ++j) {
      s += kHmdScale * std::exp(-sq_dist_(j, static_cast<Eigen::Index>(i)) / (2.0 * h * h));
    }
    return s;
  }
  return depth(reference_->row(i));
}

std::vector<double> ReferenceDepth::depths(const FunctionalSample& queries) const {
  if (!same_grid(queries.grid(), reference_->grid())) {
    throw Error(ErrorCode::DimensionMismatch, "queries and reference use different grids");
  }
  std::vector<double> out(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) out[i] = depth(queries.row(i));
  return out;
}

DepthScores depth_all(const FunctionalSample& sample, const DepthParams& params) {
  const ReferenceDepth ref(sample, params);
  DepthScores scores{params.id, params, std::vector<double>(sample.size())};
  for (std::size_t i = 0; i < sample.size(); ++i) scores.values[i] = ref.member_depth(i);
  return scores;
}

double fsd(const Curve& x, const FunctionalSample& sample) {
  check_query(x, sample);
  DepthParams p;
  p.id = DepthId::FSD;
  return ReferenceDepth(sample, p).depth(x.span());
}

double kfsd(const Curve& x, const FunctionalSample& sample, const KernelConfig& kernel) {
  check_query(x, sample);
  DepthParams p;
  p.id = DepthId::KFSD;
  p.kernel = kernel;
  return ReferenceDepth(sample, p).depth(x.span());
}

double hmd(const Curve& x, const FunctionalSample& sample, double h) {
  check_query(x, sample);
  DepthParams p;
  p.id = DepthId::HMD;
  p.hmd_bandwidth = h;
  return ReferenceDepth(sample, p).depth(x.span());
}

double fmd(const Curve& x, const FunctionalSample& sample) {
  check_query(x, sample);
  DepthParams p;
  p.id = DepthId::FMD;
  return ReferenceDepth(sample, p).depth(x.span());
}

double mbd(const Curve& x, const FunctionalSample& sample) {
  check_query(x, sample);
  DepthParams p;
  p.id = DepthId::MBD;
  return ReferenceDepth(sample, p).depth(x.span());
}

namespace {

double projection_depth(DepthId id, const Curve& x, const FunctionalSample& sample, const ProjectionSet& proj) {
  check_query(x, sample);
  DepthParams p;
  p.id = id;
  p.projections = std::make_shared<const ProjectionSet>(proj);
  return ReferenceDepth(sample, p).depth(x.span());
}

}  // namespace

double rtd(const Curve& x, const FunctionalSample& sample, const ProjectionSet& proj) {
  return projection_depth(DepthId::RTD, x, sample, proj);
}

double idd(const Curve& x, const FunctionalSample& sample, const ProjectionSet& proj) {
  return projection_depth(DepthId::IDD, x, sample, proj);
}

}  // namespace kfsd

#include "kfsd/simgen.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "kfsd/csv.hpp"
#include "kfsd/error.hpp"

namespace kfsd {

namespace {

bool shares_eps(MixtureModel m) {
  return m == MixtureModel::MM1 || m == MixtureModel::MM2 || m == MixtureModel::MM3;
}

}  // namespace

std::string_view to_string(MixtureModel model) noexcept {
  switch (model) {
    case MixtureModel::MM1: return "MM1";
    case MixtureModel::MM2: return "MM2";
    case MixtureModel::MM3: return "MM3";
    case MixtureModel::MM4: return "MM4";
    case MixtureModel::MM5: return "MM5";
    case MixtureModel::MM6: return "MM6";
  }
  return "?";
}

MixtureModel parse_model(std::string_view name) {
  std::string upper(name);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto m : {MixtureModel::MM1, MixtureModel::MM2, MixtureModel::MM3, MixtureModel::MM4, MixtureModel::MM5,
                 MixtureModel::MM6}) {
    if (upper == to_string(m)) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown mixture model '" + std::string(name) + "'");
}

GridPtr MixtureModelSpec::grid() const {
  const double hi = shares_eps(model) ? 1.0 : 2.0 * std::numbers::pi;
  return std::make_shared<const Grid>(Grid::equidistant(0.0, hi, m));
}

Eigen::MatrixXd eps_covariance(const Grid& grid) {
  const auto m = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd cov(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      const double d = grid[static_cast<std::size_t>(a)] - grid[static_cast<std::size_t>(b)];
      cov(a, b) = 0.25 * std::exp(-d * d);
    }
  }
  return cov;
}

MixtureGenerator::MixtureGenerator(MixtureModelSpec spec)
    : spec_(spec), grid_(spec.grid()), eps_(eps_covariance(*grid_), 1.0) {
  if (!(spec_.alpha >= 0.0 && spec_.alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
  if (spec_.n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
}

Eigen::VectorXd MixtureGenerator::draw_eps(RngStream& rng) const { return eps_.draw(rng); }

Eigen::VectorXd MixtureGenerator::draw_curve(bool outlier, RngStream& rng) const {
  const auto m = static_cast<Eigen::Index>(grid_->size());
  const auto s = Eigen::Map<const Eigen::VectorXd>(grid_->points().data(), m);
  Eigen::VectorXd y(m);

  switch (spec_.model) {
    case MixtureModel::MM1:
    case MixtureModel::MM2:
    case MixtureModel::MM3: {
      const Eigen::VectorXd eps = draw_eps(rng);
      if (!outlier) {
        y = 4.0 * s + eps;
      } else if (spec_.model == MixtureModel::MM1) {
        y = (8.0 * s).array() - 2.0;
        y += eps;
      } else if (spec_.model == MixtureModel::MM2) {
        y = 4.0 * s + eps;
        if (spec_.noise == NoiseMode::PerPoint) {
          for (Eigen::Index k = 0; k < m; ++k) y(k) += rng.normal();
        } else {
          y.array() += rng.normal();
        }
      } else {
        y = 4.0 * s.array().exp().matrix() + eps;
      }
      break;
    }
    case MixtureModel::MM4:
    case MixtureModel::MM5:
    case MixtureModel::MM6: {
      const double u1 = rng.uniform(0.05, 0.15);
      const double u2 = rng.uniform(0.05, 0.15);
      const Eigen::ArrayXd sin_s = s.array().sin();
      const Eigen::ArrayXd cos_s = s.array().cos();
      if (!outlier) {
        y = (u1 * sin_s + u2 * cos_s).matrix();
      } else if (spec_.model == MixtureModel::MM4) {
        const double u3 = rng.uniform(0.15, 0.17);
        y = (u1 * sin_s + u3 * cos_s).matrix();
      } else if (spec_.model == MixtureModel::MM5) {
        y = (u1 * sin_s + u2 * cos_s).matrix();
        constexpr double sd = 0.1 / 2.0;
        if (spec_.noise == NoiseMode::PerPoint) {
          for (Eigen::Index k = 0; k < m; ++k) y(k) += sd * rng.normal();
        } else {
          y.array() += sd * rng.normal();
        }
      } else {
        const double u4 = rng.uniform(0.1, 0.15);
        const Eigen::ArrayXd growth = (0.69 * s.array() / (2.0 * std::numbers::pi)).exp();
        y = (u1 * sin_s + growth * u4 * cos_s).matrix();
      }
      break;
    }
  }
  return y;
}

LabeledSample MixtureGenerator::draw_dataset(RngStream& rng) const {
  RowMatrix values(static_cast<Eigen::Index>(spec_.n), static_cast<Eigen::Index>(grid_->size()));
  std::vector<bool> outlier(spec_.n);
  std::vector<Label> labels(spec_.n);
  std::bernoulli_distribution contaminated(spec_.alpha);
  std::size_t n_out = 0;
  for (std::size_t i = 0; i < spec_.n; ++i) {
    outlier[i] = contaminated(rng);
    labels[i] = outlier[i] ? Label::Outlier : Label::Normal;
    n_out += outlier[i] ? 1 : 0;
    values.row(static_cast<Eigen::Index>(i)) = draw_curve(outlier[i], rng).transpose();
  }
  return LabeledSample{FunctionalSample(grid_, std::move(values), std::move(labels)), std::move(outlier), n_out};
}

Curve gen_eps(const GridPtr& grid, RngStream& rng) {
  const GaussianPerturbation eps(eps_covariance(*grid), 1.0);
  return Curve(grid, eps.draw(rng));
}

LabeledSample gen_dataset(const MixtureModelSpec& spec, RngStream& rng) {
  return MixtureGenerator(spec).draw_dataset(rng);
}

RngStream replication_stream(MixtureModel model, double alpha, std::uint64_t master_seed, std::size_t r) {
  const std::string key = std::string(to_string(model)) + "/" + format_double(alpha);
  return RngStream(master_seed, fnv1a64(key)).split(static_cast<std::uint64_t>(r));
}

std::vector<LabeledSample> gen_study_inputs(MixtureModel model, double alpha, std::size_t R, std::uint64_t master_seed,
                                            std::size_t n, NoiseMode noise) {
  if (R < 1) throw Error(ErrorCode::InvalidArgument, "R must be at least 1");
  const MixtureGenerator gen(MixtureModelSpec{model, alpha, n, 51, noise});
  std::vector<LabeledSample> out;
  out.reserve(R);
  for (std::size_t r = 0; r < R; ++r) {
    RngStream stream = replication_stream(model, alpha, master_seed, r);
    out.push_back(gen.draw_dataset(stream));
  }
  return out;
}

}  // namespace kfsd

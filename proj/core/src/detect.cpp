#include "kfsd/detect.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "kfsd/csv.hpp"
#include "kfsd/error.hpp"
#include "kfsd/resample.hpp"

namespace kfsd {

std::string_view to_string(KfsdScheme scheme) noexcept {
  switch (scheme) {
    case KfsdScheme::Smo: return "smo";
    case KfsdScheme::Tri: return "tri";
    case KfsdScheme::Wei: return "wei";
  }
  return "?";
}

std::vector<std::size_t> DetectionReport::flagged() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) out.push_back(i);
  }
  return out;
}

double threshold_cap(std::size_t n_z, double delta, double r, double desired_fap) {
  if (n_z < 1) throw Error(ErrorCode::EmptyDepths, "no resampled depths");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "r must lie in [0, 1)");
  if (!(desired_fap > 0.0 && desired_fap < 1.0)) throw Error(ErrorCode::InvalidArgument, "FAP must lie in (0, 1)");
  return (1.0 - r) * desired_fap - std::sqrt(std::log(1.0 / delta) / (2.0 * static_cast<double>(n_z)));
}

std::optional<double> select_threshold(std::span<const double> z_depths, double delta, double r, double desired_fap) {
  if (z_depths.empty()) throw Error(ErrorCode::EmptyDepths, "no resampled depths");
  const std::size_t n_z = z_depths.size();
  const double cap = threshold_cap(n_z, delta, r, desired_fap);
  if (!(cap > 0.0)) return std::nullopt;

  const auto nz = static_cast<double>(n_z);
  // Largest k with k / n_Z <= cap, evaluated exactly as the rule states it.
  auto k = static_cast<std::size_t>(std::floor(cap * nz));
  while (k < n_z && static_cast<double>(k + 1) / nz <= cap) ++k;
  while (k > 0 && static_cast<double>(k) / nz > cap) --k;
  if (k == 0) return std::nullopt;

  std::vector<double> sorted(z_depths.begin(), z_depths.end());
  std::sort(sorted.begin(), sorted.end());
  const double candidate = sorted[k - 1];
  const auto at_or_below =
      static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), candidate) - sorted.begin());
  if (at_or_below <= k) return candidate;
  // Ties straddle the k-th order statistic: step down below the tied block.
  const auto first_tied =
      static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), candidate) - sorted.begin());
  if (first_tied == 0) return std::nullopt;
  return sorted[first_tied - 1];
}

std::vector<bool> apply_threshold(std::span<const double> depths, std::optional<double> t) {
  std::vector<bool> flags(depths.size(), false);
  if (!t) return flags;
  for (std::size_t i = 0; i < depths.size(); ++i) flags[i] = depths[i] <= *t;
  return flags;
}

DetectionReport kfsd_detect(const FunctionalSample& sample, const DetectorConfig& cfg, RngStream& rng) {
  const std::size_t n = sample.size();
  if (n < 2) throw Error(ErrorCode::DegenerateSample, "detection needs at least 2 curves");
  const std::size_t n_z =
      cfg.n_z.value_or(static_cast<std::size_t>(std::llround(cfg.nz_factor * static_cast<double>(n))));
  if (n_z < 1) throw Error(ErrorCode::InvalidArgument, "n_Z must be at least 1");

  DetectionReport report;
  report.method = "KFSD_" + std::string(to_string(cfg.scheme));
  report.seed = rng.seed();

  const DistanceMatrix dist = pairwise_distances(sample);
  double percentile = cfg.sigma_percentile;
  if (cfg.auto_sigma) {
    RngStream tune_rng = rng.split("tune");
    const TuningResult tuning = tune_percentile(sample, cfg.tuning, tune_rng);
    percentile = tuning.percentile;
    report.tuned_percentile = percentile;
    if (tuning.fallback) report.warnings.push_back("no peripheral curves drawn; using the median candidate percentile");
  }

  DepthParams params;
  params.id = DepthId::KFSD;
  params.kfsd_percentile = percentile;
  params.kernel.sigma = distance_percentile(dist, percentile);
  const ReferenceDepth reference(sample, params);
  std::vector<double> depth(n);
  for (std::size_t i = 0; i < n; ++i) depth[i] = reference.member_depth(i);

  const double alpha_trim = cfg.alpha_trim.value_or(cfg.r);
  ResampleScheme scheme;
  switch (cfg.scheme) {
    case KfsdScheme::Smo: scheme = ResampleScheme::simple(); break;
    case KfsdScheme::Tri: scheme = ResampleScheme::trimmed(alpha_trim, depth); break;
    case KfsdScheme::Wei: scheme = ResampleScheme::weighted(depth); break;
  }
  RngStream resample_rng = rng.split("resample");
  const ResampleResult z = resample(sample, scheme, n_z, SmoothingConfig{cfg.gamma}, resample_rng);
  // Resampled curves are ranked against the original sample, not against each other.
  const std::vector<double> z_depth = reference.depths(z.sample);

  const double cap = threshold_cap(n_z, cfg.delta, cfg.r, cfg.desired_fap);
  report.threshold = select_threshold(z_depth, cfg.delta, cfg.r, cfg.desired_fap);
  if (!report.threshold) {
    report.warnings.push_back(cap > 0.0 ? "no admissible threshold below the FAP bound; nothing flagged"
                                        : "FAP bound cap <= 0 for this n_Z; nothing flagged");
  }
  report.flags = apply_threshold(depth, report.threshold);
  report.depth_scores = DepthScores{DepthId::KFSD, params, std::move(depth)};

  report.config = {
      {"rule", std::string("kfsd_threshold")},
      {"scheme", std::string(to_string(cfg.scheme))},
      {"delta", cfg.delta},
      {"r", cfg.r},
      {"desired_fap", cfg.desired_fap},
      {"n_z", static_cast<std::int64_t>(n_z)},
      {"gamma", cfg.gamma},
      {"alpha_trim", alpha_trim},
      {"auto_sigma", cfg.auto_sigma},
      {"tuning_replications", static_cast<std::int64_t>(cfg.tuning.replications)},
      {"cap", cap},
  };
  if (!cfg.auto_sigma) report.config["sigma_percentile"] = cfg.sigma_percentile;
  return report;
}

DetectionReport fbp_detect(const FunctionalSample& sample, const DepthScores& depth_scores, double inflation) {
  const std::size_t n = sample.size();
  if (n < 2) throw Error(ErrorCode::DegenerateSample, "functional boxplot needs at least 2 curves");
  if (depth_scores.values.size() != n) throw Error(ErrorCode::DimensionMismatch, "one depth score per curve");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto& d = depth_scores.values;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
  const std::size_t central = (n + 1) / 2;

  const std::size_t m = sample.points();
  std::vector<double> lower(m), upper(m);
  for (std::size_t k = 0; k < m; ++k) {
    double lo = sample.row(order[0])[k];
    double hi = lo;
    for (std::size_t c = 1; c < central; ++c) {
      const double v = sample.row(order[c])[k];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double pad = inflation * (hi - lo);
    lower[k] = lo - pad;
    upper[k] = hi + pad;
  }

  DetectionReport report;
  report.method = "FBP+" + std::string(to_string(depth_scores.id));
  report.flags.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = sample.row(i);
    for (std::size_t k = 0; k < m; ++k) {
      if (y[k] < lower[k] || y[k] > upper[k]) {
        report.flags[i] = true;
        break;
      }
    }
  }
  report.depth_scores = depth_scores;
  report.config = {
      {"rule", std::string("functional_boxplot")},
      {"inflation", inflation},
      {"central_curves", static_cast<std::int64_t>(central)},
  };
  return report;
}

namespace {

double nearest_rank(std::vector<double> values, double percent) {
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::size_t>(std::ceil(percent * static_cast<double>(values.size()) / 100.0 - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

DetectionReport bootstrap_detect(const FunctionalSample& sample, const DepthSpec& depth, const BootstrapConfig& cfg,
                                 RngStream& rng) {
  const std::size_t n = sample.size();
  if (n < 2) throw Error(ErrorCode::DegenerateSample, "bootstrap detection needs at least 2 curves");
  if (cfg.B < 1) throw Error(ErrorCode::InvalidArgument, "B must be at least 1");
  if (cfg.scheme == KfsdScheme::Smo) throw Error(ErrorCode::InvalidArgument, "bootstrap uses trimmed or weighted resampling");

  // Depth parameters are fixed from the full sample and reused on every resample and iteration.
  const DepthParams params = resolve_depth_params(depth, sample);
  const DepthScores initial = depth_all(sample, params);

  const GaussianPerturbation perturbation(sample_covariance(sample), cfg.gamma);
  const ResampleScheme scheme = cfg.scheme == KfsdScheme::Tri ? ResampleScheme::trimmed(cfg.alpha_trim, initial.values)
                                                              : ResampleScheme::weighted(initial.values);
  std::vector<double> low_percentiles(cfg.B);
  for (std::size_t b = 0; b < cfg.B; ++b) {
    RngStream stream = rng.split(b);
    const ResampleResult z = resample(sample, scheme, n, perturbation, stream);
    low_percentiles[b] = nearest_rank(depth_all(z.sample, params).values, cfg.percentile_level);
  }
  const double cutoff = median(std::move(low_percentiles));

  DetectionReport report;
  report.method = "B_" + std::string(to_string(cfg.scheme)) + "+" + std::string(to_string(depth.id));
  report.seed = rng.seed();
  report.flags.assign(n, false);
  report.threshold = cutoff;

  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);
  std::vector<double> current = initial.values;
  std::size_t iterations = 0;
  while (true) {
    ++iterations;
    std::vector<std::size_t> keep;
    bool removed = false;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (current[k] < cutoff) {
        report.flags[active[k]] = true;
        removed = true;
      } else {
        keep.push_back(active[k]);
      }
    }
    if (!removed) break;
    active = std::move(keep);
    if (active.size() < 2) {
      report.warnings.push_back("fewer than 2 curves left after removal; stopping");
      break;
    }
    current = depth_all(sample.subset(active), params).values;
  }

  report.depth_scores = initial;
  report.config = {
      {"rule", std::string("bootstrap_cutoff")},
      {"B", static_cast<std::int64_t>(cfg.B)},
      {"scheme", std::string(to_string(cfg.scheme))},
      {"gamma", cfg.gamma},
      {"alpha_trim", cfg.alpha_trim},
      {"percentile_level", cfg.percentile_level},
      {"iterations", static_cast<std::int64_t>(iterations)},
  };
  return report;
}

std::string MethodSpec::label() const {
  switch (kind) {
    case MethodKind::Kfsd: return "KFSD_" + std::string(to_string(scheme));
    case MethodKind::Fbp: return "FBP+" + std::string(to_string(depth));
    case MethodKind::Bootstrap: return "B_" + std::string(to_string(scheme)) + "+" + std::string(to_string(depth));
  }
  return "?";
}

MethodSpec MethodSpec::parse(std::string_view label) {
  std::string s;
  for (char c : label) {
    if (c != '_' && c != '-' && c != ' ') s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  auto scheme_of = [&](std::string_view tag) {
    if (tag == "SMO") return KfsdScheme::Smo;
    if (tag == "TRI") return KfsdScheme::Tri;
    if (tag == "WEI") return KfsdScheme::Wei;
    throw Error(ErrorCode::InvalidArgument, "unknown resampling scheme in '" + std::string(label) + "'");
  };
  MethodSpec spec;
  const auto plus = s.find('+');
  if (plus == std::string::npos) {
    if (s.rfind("KFSD", 0) == 0 && s.size() == 7) {
      spec.kind = MethodKind::Kfsd;
      spec.scheme = scheme_of(std::string_view(s).substr(4));
      return spec;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(label) + "'");
  }
  const std::string head = s.substr(0, plus);
  spec.depth = parse_depth_id(s.substr(plus + 1));
  if (head == "FBP") {
    spec.kind = MethodKind::Fbp;
  } else if (head.size() == 4 && head[0] == 'B') {
    spec.kind = MethodKind::Bootstrap;
    spec.scheme = scheme_of(std::string_view(head).substr(1));
    if (spec.scheme == KfsdScheme::Smo) throw Error(ErrorCode::InvalidArgument, "bootstrap needs tri or wei");
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(label) + "'");
  }
  return spec;
}

DetectionReport run_method(const FunctionalSample& sample, const MethodSpec& method, const MethodSettings& settings,
                           RngStream& rng) {
  DepthSpec depth = settings.depth_defaults;
  depth.id = method.depth;
  depth.projection_seed = rng.split("projections")();

  DetectionReport report;
  switch (method.kind) {
    case MethodKind::Kfsd: {
      DetectorConfig cfg = settings.kfsd;
      cfg.scheme = method.scheme;
      if (!settings.explicit_r) cfg.r = settings.alpha;
      if (!cfg.alpha_trim) cfg.alpha_trim = settings.alpha;
      report = kfsd_detect(sample, cfg, rng);
      break;
    }
    case MethodKind::Fbp: {
      const DepthParams params = resolve_depth_params(depth, sample);
      report = fbp_detect(sample, depth_all(sample, params));
      break;
    }
    case MethodKind::Bootstrap: {
      BootstrapConfig cfg;
      cfg.B = settings.bootstrap_B;
      cfg.scheme = method.scheme;
      cfg.gamma = settings.gamma;
      cfg.alpha_trim = settings.alpha;
      RngStream boot = rng.split("bootstrap");
      report = bootstrap_detect(sample, depth, cfg, boot);
      break;
    }
  }
  report.method = method.label();
  report.seed = rng.seed();
  report.config["alpha"] = settings.alpha;
  report.config["method"] = method.label();
  return report;
}

void write_flags_csv(std::ostream& out, const DetectionReport& report) {
  out << "curve_index,depth,flag\n";
  for (std::size_t i = 0; i < report.flags.size(); ++i) {
    const double d = i < report.depth_scores.values.size() ? report.depth_scores.values[i] : std::nan("");
    out << i << ',' << format_double(d) << ',' << (report.flags[i] ? 1 : 0) << '\n';
  }
}

std::string outlier_summary(const DetectionReport& report, std::span<const std::size_t> labels) {
  std::ostringstream os;
  os << "Curves detected as outliers: ";
  const auto flagged = report.flagged();
  if (flagged.empty()) os << '-';
  for (std::size_t k = 0; k < flagged.size(); ++k) {
    const std::size_t i = flagged[k];
    os << (k ? ", " : "") << (i < labels.size() ? labels[i] : i + 1);
  }
  return os.str();
}

}  // namespace kfsd

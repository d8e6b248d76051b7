#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kfsd/depths.hpp"
#include "kfsd/fdata.hpp"
#include "kfsd/rng.hpp"
#include "kfsd/tune.hpp"

namespace kfsd {

enum class KfsdScheme { Smo, Tri, Wei };

std::string_view to_string(KfsdScheme scheme) noexcept;

struct DetectorConfig {
  KfsdScheme scheme = KfsdScheme::Tri;
  double delta = 0.05;
  double r = 0.05;            // upper bound on the contamination probability
  double desired_fap = 0.10;
  std::optional<std::size_t> n_z;  // defaults to nz_factor * n
  double nz_factor = 6.0;
  double gamma = 0.05;
  std::optional<double> alpha_trim;  // defaults to r
  bool auto_sigma = true;
  double sigma_percentile = 50.0;    // used when auto_sigma is false
  TuningConfig tuning;
};

struct BootstrapConfig {
  std::size_t B = 200;
  KfsdScheme scheme = KfsdScheme::Tri;  // Tri or Wei
  double gamma = 0.05;
  double alpha_trim = 0.05;
  double percentile_level = 1.0;  // percent
};

using ConfigValue = std::variant<std::int64_t, double, std::string, bool>;
using ConfigEcho = std::map<std::string, ConfigValue>;

struct DetectionReport {
  std::string method;
  std::vector<bool> flags;
  std::optional<double> threshold;
  DepthScores depth_scores;
  std::optional<double> tuned_percentile;
  std::uint64_t seed = 0;
  ConfigEcho config;
  std::vector<std::string> warnings;

  std::vector<std::size_t> flagged() const;
};

/// cap = (1 - r) * FAP - sqrt(ln(1/delta) / (2 n_Z)); the largest admissible
/// fraction of resampled depths at or below the threshold.
double threshold_cap(std::size_t n_z, double delta, double r, double desired_fap);

/// Largest observed depth t with #{z <= t} / n_Z <= cap, or nullopt when no
/// such value exists (cap <= 0, floor(cap n_Z) = 0, or ties at the bottom).
std::optional<double> select_threshold(std::span<const double> z_depths, double delta, double r, double desired_fap);

/// flags[i] = depth[i] <= t.
std::vector<bool> apply_threshold(std::span<const double> depths, std::optional<double> t);

/// KFSD_smo / KFSD_tri / KFSD_wei.
DetectionReport kfsd_detect(const FunctionalSample& sample, const DetectorConfig& cfg, RngStream& rng);

/// Functional boxplot rule: envelope of the ceil(n/2) deepest curves, inflated
/// by `inflation` times its pointwise height on each side.
DetectionReport fbp_detect(const FunctionalSample& sample, const DepthScores& depth_scores, double inflation = 1.5);

/// Smoothed-bootstrap cutoff (median over B of the within-resample 1%
/// percentile), then iterative removal of curves with depth < cutoff.
DetectionReport bootstrap_detect(const FunctionalSample& sample, const DepthSpec& depth, const BootstrapConfig& cfg,
                                 RngStream& rng);

enum class MethodKind { Kfsd, Fbp, Bootstrap };

/// A detection method as named in result tables: KFSD_smo, FBP+MBD, B_tri+HMD, ...
struct MethodSpec {
  MethodKind kind = MethodKind::Kfsd;
  KfsdScheme scheme = KfsdScheme::Tri;
  DepthId depth = DepthId::KFSD;

  std::string label() const;
  static MethodSpec parse(std::string_view label);
};

/// Shared settings for dispatching any method on one sample.
struct MethodSettings {
  double alpha = 0.05;  // assumed contamination: sets r and the trimming proportion
  DetectorConfig kfsd;  // r / alpha_trim overridden from alpha unless set explicitly
  bool explicit_r = false;
  std::size_t bootstrap_B = 200;
  double gamma = 0.05;
  DepthSpec depth_defaults;  // percentiles and projection count for competitor depths
};

DetectionReport run_method(const FunctionalSample& sample, const MethodSpec& method, const MethodSettings& settings,
                           RngStream& rng);

/// Canonical JSON: sorted keys, floats with 17 significant digits, no whitespace.
std::string to_canonical_json(const DetectionReport& report);
std::string config_hash(const ConfigEcho& config);

/// curve_index,depth,flag rows.
void write_flags_csv(std::ostream& out, const DetectionReport& report);

/// "Curves detected as outliers: 12, 14" with 1-based positions (or "-").
std::string outlier_summary(const DetectionReport& report, std::span<const std::size_t> labels = {});

}  // namespace kfsd

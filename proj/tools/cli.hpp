#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kfsd/csv.hpp"

namespace kfsd::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // data, numerical or I/O error
inline constexpr int kUsage = 2;    // bad flags, unknown config keys, conflicting options

struct CommonOptions {
  std::uint64_t seed = 1;
  std::string out;  // empty: write the artifact to stdout
  std::string format = "json";
  std::size_t threads = 0;  // 0: all hardware threads
  bool dry_run = false;
};

struct InputOptions {
  std::string path;
  HeaderMode header = HeaderMode::Auto;
  bool drop_incomplete = false;
};

struct SimulateOptions {
  CommonOptions common;
  std::string model = "MM1";
  double alpha = 0.05;
  std::size_t n = 50;
  std::size_t R = 1;
  std::string noise = "per-point";
};

struct DepthOptions {
  CommonOptions common;
  InputOptions input;
  std::string depth = "KFSD";
  std::string kernel = "gaussian";
  double sigma_percentile = 50.0;
  double hmd_percentile = 15.0;
  std::size_t projections = 50;
};

struct TuneOptions {
  CommonOptions common;
  InputOptions input;
  std::size_t replications = 20;
  double gamma = 0.05;
};

struct DetectorOptions {
  double alpha = 0.05;
  std::optional<double> r;  // defaults to alpha
  double delta = 0.05;
  double fap = 0.10;
  double nz_factor = 6.0;
  double gamma = 0.05;
  std::optional<double> sigma_percentile;  // set: fixed bandwidth percentile, no tuning
  std::size_t replications = 20;
  std::size_t B = 200;
  double hmd_percentile = 15.0;
  std::size_t projections = 50;
};

struct DetectOptions {
  CommonOptions common;
  InputOptions input;
  std::string method = "KFSD_tri";
  std::optional<std::string> depth;  // for FBP / bootstrap methods given without a depth
  DetectorOptions detector;
};

struct BenchOptions {
  CommonOptions common;
  std::vector<std::string> models;   // empty: MM1..MM6
  std::vector<double> alphas;        // empty: 0.02, 0.05
  std::vector<std::string> methods;  // empty: every implemented method
  std::size_t R = 100;
  std::size_t n = 50;
  std::string noise = "per-point";
  std::string table;  // optional path for the text table
  DetectorOptions detector;
};

std::vector<std::string> default_bench_methods();

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_depth(const DepthOptions& opt, std::ostream& out, std::ostream& err);
int cmd_tune(const TuneOptions& opt, std::ostream& out, std::ostream& err);
int cmd_detect(const DetectOptions& opt, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err);

/// Parses flags, environment (KFSD_*) and an optional --config file, then dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kfsd::cli

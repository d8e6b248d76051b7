#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "kfsd/csv.hpp"
#include "kfsd/depths.hpp"
#include "kfsd/detect.hpp"
#include "kfsd/error.hpp"
#include "kfsd/experiment.hpp"
#include "kfsd/report.hpp"
#include "kfsd/simgen.hpp"
#include "kfsd/tune.hpp"

namespace kfsd::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return hex16(fnv1a64(bytes.str()));
}

std::string stamp(std::uint64_t seed, const ConfigEcho& config) {
  return "# kfsd seed=" + std::to_string(seed) + " config_hash=" + config_hash(config) + "\n";
}

template <class T>
std::string join(const std::vector<T>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_same_v<T, double>) {
      s += format_double(items[i]);
    } else {
      s += items[i];
    }
  }
  return s;
}

// Writes the primary artifact to `path`, or to `out` when no path is given.
void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + path);
}

std::ostream& human_stream(const CommonOptions& c, std::ostream& out, std::ostream& err) {
  return c.out.empty() ? err : out;
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw UsageError("--format must be csv or json");
}

LoadedSample load(const InputOptions& in) {
  if (in.path.empty()) throw UsageError("--in is required");
  return to_sample(read_curve_csv(in.path, in.header), in.drop_incomplete);
}

void echo_input(ConfigEcho& config, const InputOptions& in, const LoadedSample& loaded) {
  config["input_hash"] = file_hash(in.path);
  config["n"] = static_cast<std::int64_t>(loaded.sample.size());
  config["m"] = static_cast<std::int64_t>(loaded.sample.points());
  config["dropped_rows"] = static_cast<std::int64_t>(loaded.dropped_rows.size());
}

NoiseMode parse_noise(const std::string& s) {
  if (s == "per-point") return NoiseMode::PerPoint;
  if (s == "scalar-shift") return NoiseMode::ScalarShift;
  throw UsageError("--noise must be per-point or scalar-shift");
}

MethodSettings method_settings(const DetectorOptions& d) {
  MethodSettings s;
  s.alpha = d.alpha;
  s.explicit_r = d.r.has_value();
  s.kfsd.r = d.r.value_or(d.alpha);
  s.kfsd.delta = d.delta;
  s.kfsd.desired_fap = d.fap;
  s.kfsd.nz_factor = d.nz_factor;
  s.kfsd.gamma = d.gamma;
  s.kfsd.auto_sigma = !d.sigma_percentile.has_value();
  s.kfsd.sigma_percentile = d.sigma_percentile.value_or(50.0);
  s.kfsd.tuning.replications = d.replications;
  s.kfsd.tuning.gamma = d.gamma;
  s.bootstrap_B = d.B;
  s.gamma = d.gamma;
  s.depth_defaults.hmd_percentile = d.hmd_percentile;
  s.depth_defaults.projections = d.projections;
  if (d.sigma_percentile) s.depth_defaults.kfsd_percentile = *d.sigma_percentile;
  return s;
}

void echo_detector(ConfigEcho& c, const DetectorOptions& d) {
  c["alpha"] = d.alpha;
  c["r"] = d.r.value_or(d.alpha);
  c["delta"] = d.delta;
  c["desired_fap"] = d.fap;
  c["nz_factor"] = d.nz_factor;
  c["gamma"] = d.gamma;
  c["auto_sigma"] = !d.sigma_percentile.has_value();
  if (d.sigma_percentile) c["sigma_percentile"] = *d.sigma_percentile;
  c["tuning_replications"] = static_cast<std::int64_t>(d.replications);
  c["B"] = static_cast<std::int64_t>(d.B);
  c["hmd_percentile"] = d.hmd_percentile;
  c["projections"] = static_cast<std::int64_t>(d.projections);
}

// Accepts full labels (KFSD_tri, FBP+MBD, B_wei+HMD) or a bare FBP / B_tri /
// B_wei completed by --depth.
MethodSpec resolve_method(const std::string& method, const std::optional<std::string>& depth) {
  std::string key;
  for (char c : upper(method)) {
    if (c != '_' && c != '-' && c != ' ') key.push_back(c);
  }
  std::string label = method;
  if (key == "FBP" || key == "BTRI" || key == "BWEI") {
    const std::string d = depth ? *depth : (key == "FBP" ? "MBD" : "HMD");
    label = method + "+" + d;
  }
  MethodSpec spec;
  try {
    spec = MethodSpec::parse(label);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (depth) {
    const DepthId want = parse_depth_id(*depth);
    const bool conflict = spec.kind == MethodKind::Kfsd ? want != DepthId::KFSD : want != spec.depth;
    if (conflict) throw UsageError("--depth " + *depth + " conflicts with --method " + method);
  }
  return spec;
}

}  // namespace

std::vector<std::string> default_bench_methods() {
  std::vector<std::string> out;
  const char* depths[] = {"FMD", "HMD", "RTD", "IDD", "MBD", "FSD", "KFSD"};
  for (const char* head : {"FBP+", "B_tri+", "B_wei+"}) {
    for (const char* d : depths) out.push_back(std::string(head) + d);
  }
  for (const char* k : {"KFSD_smo", "KFSD_tri", "KFSD_wei"}) out.emplace_back(k);
  return out;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  const MixtureModel model = parse_model(opt.model);
  const NoiseMode noise = parse_noise(opt.noise);
  if (!(opt.alpha >= 0.0 && opt.alpha <= 1.0)) throw UsageError("--alpha must lie in [0, 1]");
  if (opt.n < 2) throw UsageError("--n must be at least 2");
  if (opt.R < 1) throw UsageError("--R must be at least 1");

  ConfigEcho config{
      {"command", std::string("simulate")},
      {"model", std::string(to_string(model))},
      {"alpha", opt.alpha},
      {"n", static_cast<std::int64_t>(opt.n)},
      {"m", std::int64_t{51}},
      {"R", static_cast<std::int64_t>(opt.R)},
      {"noise", opt.noise},
  };
  std::vector<std::string> files;
  char base[64];
  for (std::size_t r = 0; r < opt.R; ++r) {
    std::snprintf(base, sizeof base, "%s_a%g_r%03zu", std::string(to_string(model)).c_str(), opt.alpha, r);
    files.push_back(std::string(base) + ".csv");
    files.push_back(std::string(base) + "_labels.csv");
  }

  if (opt.common.dry_run) {
    out << "plan: simulate " << to_string(model) << " alpha=" << format_double(opt.alpha) << " n=" << opt.n
        << " R=" << opt.R << " noise=" << opt.noise << " seed=" << opt.common.seed << '\n';
    out << "plan: would write " << files.size() + 1 << " files to "
        << (opt.common.out.empty() ? std::string("<--out>") : opt.common.out) << '\n';
    return kOk;
  }
  if (opt.common.out.empty()) throw UsageError("simulate needs --out DIR");

  const fs::path dir(opt.common.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

  const auto datasets = gen_study_inputs(model, opt.alpha, opt.R, opt.common.seed, opt.n, noise);
  const std::string header = stamp(opt.common.seed, config);
  for (std::size_t r = 0; r < opt.R; ++r) {
    std::ostringstream data, labels;
    data << header;
    write_curve_csv(data, datasets[r].sample);
    labels << header;
    write_labels_csv(labels, datasets[r].sample.labels());
    emit((dir / files[2 * r]).string(), out, data.str());
    emit((dir / files[2 * r + 1]).string(), out, labels.str());
  }
  emit((dir / "manifest.json").string(), out, manifest_json(config, opt.common.seed, files) + "\n");
  err << "wrote " << files.size() + 1 << " files to " << dir.string() << '\n';
  return kOk;
}

int cmd_depth(const DepthOptions& opt, std::ostream& out, std::ostream& err) {
  check_format(opt.common.format);
  DepthSpec spec;
  spec.id = parse_depth_id(opt.depth);
  spec.kfsd_percentile = opt.sigma_percentile;
  spec.hmd_percentile = opt.hmd_percentile;
  spec.projections = opt.projections;
  if (opt.kernel == "gaussian") {
    spec.kernel = KernelKind::Gaussian;
  } else if (opt.kernel == "linear") {
    spec.kernel = KernelKind::Linear;
  } else {
    throw UsageError("--kernel must be gaussian or linear");
  }
  spec.projection_seed = RngStream(opt.common.seed).split("projections")();

  if (opt.common.dry_run) {
    out << "plan: depth " << to_string(spec.id) << " of " << opt.input.path << " seed=" << opt.common.seed << '\n';
    return kOk;
  }
  const LoadedSample loaded = load(opt.input);
  const DepthScores scores = depth_all(loaded.sample, resolve_depth_params(spec, loaded.sample));

  ConfigEcho config{
      {"command", std::string("depth")},
      {"depth", std::string(to_string(spec.id))},
      {"kernel", opt.kernel},
      {"sigma_percentile", opt.sigma_percentile},
      {"hmd_percentile", opt.hmd_percentile},
      {"projections", static_cast<std::int64_t>(opt.projections)},
  };
  echo_input(config, opt.input, loaded);

  if (opt.common.format == "json") {
    emit(opt.common.out, out, to_canonical_json(scores, config, opt.common.seed) + "\n");
  } else {
    std::ostringstream csv;
    csv << stamp(opt.common.seed, config) << "curve_index,source_row,depth\n";
    for (std::size_t i = 0; i < scores.values.size(); ++i) {
      csv << i << ',' << loaded.source_rows[i] + 1 << ',' << format_double(scores.values[i]) << '\n';
    }
    emit(opt.common.out, out, csv.str());
  }
  if (!opt.common.out.empty()) err << "wrote " << opt.common.out << '\n';
  return kOk;
}

int cmd_tune(const TuneOptions& opt, std::ostream& out, std::ostream& err) {
  check_format(opt.common.format);
  TuningConfig tuning;
  tuning.replications = opt.replications;
  tuning.gamma = opt.gamma;
  if (opt.common.dry_run) {
    out << "plan: tune " << opt.input.path << " J=" << opt.replications << " seed=" << opt.common.seed << '\n';
    return kOk;
  }
  const LoadedSample loaded = load(opt.input);
  // same sub-stream as the tuning step inside detect, so both agree for a seed
  RngStream rng = RngStream(opt.common.seed).split("tune");
  const TuningResult result = tune_percentile(loaded.sample, tuning, rng);

  ConfigEcho config{
      {"command", std::string("tune")},
      {"tuning_replications", static_cast<std::int64_t>(opt.replications)},
      {"gamma", opt.gamma},
  };
  echo_input(config, opt.input, loaded);

  if (opt.common.format == "json") {
    emit(opt.common.out, out, to_canonical_json(result, tuning, config, opt.common.seed) + "\n");
  } else {
    std::ostringstream csv;
    csv << stamp(opt.common.seed, config);
    write_tuning_trace_csv(csv, result, tuning);
    emit(opt.common.out, out, csv.str());
  }
  human_stream(opt.common, out, err) << "Selected percentile: " << format_double(result.percentile)
                                     << (result.fallback ? " (fallback)" : "") << '\n';
  if (result.fallback) err << "WARN: no peripheral curves drawn; using the median candidate\n";
  return kOk;
}

int cmd_detect(const DetectOptions& opt, std::ostream& out, std::ostream& err) {
  check_format(opt.common.format);
  const MethodSpec method = resolve_method(opt.method, opt.depth);
  if (opt.common.dry_run) {
    out << "plan: detect " << method.label() << " on " << opt.input.path << " seed=" << opt.common.seed << '\n';
    return kOk;
  }
  const LoadedSample loaded = load(opt.input);
  RngStream rng(opt.common.seed);
  DetectionReport report = run_method(loaded.sample, method, method_settings(opt.detector), rng);
  report.config["command"] = std::string("detect");
  echo_detector(report.config, opt.detector);
  echo_input(report.config, opt.input, loaded);

  if (opt.common.format == "json") {
    emit(opt.common.out, out, to_canonical_json(report) + "\n");
  } else {
    std::ostringstream csv;
    csv << stamp(opt.common.seed, report.config);
    write_flags_csv(csv, report);
    emit(opt.common.out, out, csv.str());
  }
  std::vector<std::size_t> rows(loaded.source_rows.size());
  std::transform(loaded.source_rows.begin(), loaded.source_rows.end(), rows.begin(), [](auto r) { return r + 1; });
  human_stream(opt.common, out, err) << report.method << ": " << outlier_summary(report, rows) << '\n';
  for (const auto& w : report.warnings) err << "WARN: " << w << '\n';
  return kOk;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  check_format(opt.common.format);
  StudyConfig study;
  const auto models = opt.models.empty() ? std::vector<std::string>{"MM1", "MM2", "MM3", "MM4", "MM5", "MM6"} : opt.models;
  for (const auto& m : models) study.models.push_back(parse_model(m));
  study.alphas = opt.alphas.empty() ? std::vector<double>{0.02, 0.05} : opt.alphas;
  for (double a : study.alphas) {
    if (!(a >= 0.0 && a < 1.0)) throw UsageError("alphas must lie in [0, 1)");
  }
  const auto methods = opt.methods.empty() ? default_bench_methods() : opt.methods;
  std::vector<std::string> labels;
  for (const auto& m : methods) {
    study.methods.push_back(resolve_method(m, std::nullopt));
    labels.push_back(study.methods.back().label());
  }
  if (opt.R < 1) throw UsageError("--R must be at least 1");
  study.R = opt.R;
  study.n = opt.n;
  study.noise = parse_noise(opt.noise);
  study.master_seed = opt.common.seed;
  study.settings = method_settings(opt.detector);
  study.threads = opt.common.threads;

  std::vector<std::string> model_names;
  for (auto m : study.models) model_names.emplace_back(to_string(m));
  ConfigEcho config{
      {"command", std::string("bench")},
      {"models", join(model_names)},
      {"alphas", join(study.alphas)},
      {"methods", join(labels)},
      {"R", static_cast<std::int64_t>(opt.R)},
      {"n", static_cast<std::int64_t>(opt.n)},
      {"noise", opt.noise},
  };
  echo_detector(config, opt.detector);
  config.erase("alpha");  // set per cell
  config.erase("r");
  if (opt.detector.r) config["r"] = *opt.detector.r;

  if (opt.common.dry_run) {
    out << "plan: bench " << study.models.size() << " models x " << study.alphas.size() << " alphas x "
        << study.methods.size() << " methods = " << study.models.size() * study.alphas.size() * study.methods.size()
        << " cells, R=" << opt.R << ", seed=" << opt.common.seed << '\n';
    out << "plan: models " << join(model_names) << "; alphas " << join(study.alphas) << '\n';
    out << "plan: methods " << join(labels) << '\n';
    out << "plan: output " << (opt.common.out.empty() ? std::string("stdout") : opt.common.out) << " ("
        << opt.common.format << ")" << (opt.table.empty() ? "" : ", table " + opt.table) << '\n';
    return kOk;
  }

  const StudyResult result = run_study(study);
  if (opt.common.format == "json") {
    emit(opt.common.out, out, to_canonical_json(result, config) + "\n");
  } else {
    std::ostringstream csv;
    csv << stamp(opt.common.seed, config);
    write_study_csv(csv, result);
    emit(opt.common.out, out, csv.str());
  }
  std::ostringstream table;
  table << stamp(opt.common.seed, config);
  write_study_table(table, result);
  if (!opt.table.empty()) emit(opt.table, out, table.str());
  human_stream(opt.common, out, err) << table.str();
  return kOk;
}

namespace {

void add_common(CLI::App& sub, CommonOptions& c, bool with_format = true) {
  sub.add_option("--seed", c.seed, "master seed recorded in every output")->capture_default_str();
  sub.add_option("--out", c.out, "output path (default: stdout)");
  if (with_format) {
    sub.add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }
  sub.add_flag("--dry-run", c.dry_run, "print the plan and write nothing");
}

void add_input(CLI::App& sub, InputOptions& in) {
  sub.add_option("--in", in.path, "input CSV, one curve per row")->check(CLI::ExistingFile);
  const std::map<std::string, HeaderMode> modes{
      {"auto", HeaderMode::Auto}, {"present", HeaderMode::Present}, {"absent", HeaderMode::Absent}};
  sub.add_option("--header", in.header, "first row holds grid abscissae: auto|present|absent")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  sub.add_flag("--drop-incomplete", in.drop_incomplete, "drop rows with missing cells instead of failing");
}

void add_detector(CLI::App& sub, DetectorOptions& d) {
  sub.add_option("--alpha", d.alpha, "assumed contamination; sets r and the trimming share")->capture_default_str();
  sub.add_option("--r", d.r, "upper bound on the contamination probability (default: alpha)");
  sub.add_option("--delta", d.delta, "confidence parameter of the FAP bound")->capture_default_str();
  sub.add_option("--fap", d.fap, "desired false alarm probability")->capture_default_str();
  sub.add_option("--nz-factor", d.nz_factor, "resample size as a multiple of n")->capture_default_str();
  sub.add_option("--gamma", d.gamma, "smoothing covariance scale")->capture_default_str();
  auto* sigma = sub.add_option("--sigma-percentile", d.sigma_percentile,
                               "fixed KFSD bandwidth percentile (disables tuning)");
  auto* automatic = sub.add_flag("--auto-sigma", "tune the KFSD bandwidth percentile (default)");
  sigma->excludes(automatic);
  sub.add_option("--replications", d.replications, "tuning replications J")->capture_default_str();
  sub.add_option("--B", d.B, "bootstrap resamples")->capture_default_str();
  sub.add_option("--hmd-percentile", d.hmd_percentile, "HMD bandwidth percentile")->capture_default_str();
  sub.add_option("--projections", d.projections, "random projections for RTD/IDD")->capture_default_str();
}

void add_env(CLI::App& sub) {
  for (CLI::Option* o : sub.get_options()) {
    const auto& names = o->get_lnames();
    if (names.empty() || names.front() == "help" || names.front() == "config") continue;
    std::string env = "KFSD_" + upper(names.front());
    std::replace(env.begin(), env.end(), '-', '_');
    o->envname(env);
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Outlier detection for functional data with kernelized spatial depth", "kfsd"};
  app.set_version_flag("--version", "kfsd 0.1.0");
  app.set_config("--config", "", "TOML/INI file with option values (flags take precedence)")
      ->check(CLI::ExistingFile);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  std::size_t threads = 0;
  app.add_option("--threads", threads, "worker threads for Monte Carlo replications (0: all)")
      ->envname("KFSD_THREADS");

  SimulateOptions sim;
  auto* s = app.add_subcommand("simulate", "generate mixture-model datasets with labels and a manifest");
  add_common(*s, sim.common, false);
  s->add_option("--model", sim.model, "MM1..MM6")->capture_default_str();
  s->add_option("--alpha", sim.alpha, "contamination probability")->capture_default_str();
  s->add_option("--n", sim.n, "curves per dataset")->capture_default_str();
  s->add_option("--R", sim.R, "number of datasets")->capture_default_str();
  s->add_option("--noise", sim.noise, "MM2/MM5 outlier noise: per-point|scalar-shift")->capture_default_str();

  DepthOptions dep;
  auto* d = app.add_subcommand("depth", "compute one depth for every curve of a sample");
  add_common(*d, dep.common);
  add_input(*d, dep.input);
  d->add_option("--depth", dep.depth, "FSD|KFSD|HMD|FMD|MBD|RTD|IDD")->capture_default_str();
  d->add_option("--kernel", dep.kernel, "KFSD kernel: gaussian|linear")->capture_default_str();
  d->add_option("--sigma-percentile", dep.sigma_percentile, "KFSD bandwidth percentile")->capture_default_str();
  d->add_option("--hmd-percentile", dep.hmd_percentile, "HMD bandwidth percentile")->capture_default_str();
  d->add_option("--projections", dep.projections, "random projections for RTD/IDD")->capture_default_str();

  TuneOptions tun;
  auto* t = app.add_subcommand("tune", "select the KFSD bandwidth percentile from peripheral curves");
  add_common(*t, tun.common);
  add_input(*t, tun.input);
  t->add_option("--replications", tun.replications, "replications J")->capture_default_str();
  t->add_option("--gamma", tun.gamma, "smoothing covariance scale")->capture_default_str();

  DetectOptions det;
  auto* x = app.add_subcommand("detect", "flag outlying curves");
  add_common(*x, det.common);
  add_input(*x, det.input);
  x->add_option("--method", det.method, "KFSD_smo|KFSD_tri|KFSD_wei|FBP|B_tri|B_wei or a full label")
      ->capture_default_str();
  x->add_option("--depth", det.depth, "depth for FBP and bootstrap methods");
  add_detector(*x, det.detector);

  BenchOptions ben;
  auto* b = app.add_subcommand("bench", "Monte Carlo study of correct and false detection percentages");
  add_common(*b, ben.common);
  b->add_option("--model,--models", ben.models, "mixture models (default: MM1..MM6)")->delimiter(',');
  b->add_option("--alphas", ben.alphas, "contamination probabilities (default: 0.02,0.05)")->delimiter(',');
  b->add_option("--method,--methods", ben.methods, "method labels (default: all implemented)")->delimiter(',');
  b->add_option("--R", ben.R, "replications per cell")->capture_default_str();
  b->add_option("--n", ben.n, "curves per dataset")->capture_default_str();
  b->add_option("--noise", ben.noise, "MM2/MM5 outlier noise: per-point|scalar-shift")->capture_default_str();
  b->add_option("--table", ben.table, "also write the text table to this file");
  add_detector(*b, ben.detector);
  // --alpha would be ambiguous next to --alphas in a study
  b->remove_option(b->get_option("--alpha"));

  for (CLI::App* sub : {s, d, t, x, b}) {
    sub->allow_config_extras(CLI::config_extras_mode::error);
    add_env(*sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (CommonOptions* c : {&sim.common, &dep.common, &tun.common, &det.common, &ben.common}) c->threads = threads;
    if (s->parsed()) return cmd_simulate(sim, out, err);
    if (d->parsed()) return cmd_depth(dep, out, err);
    if (t->parsed()) return cmd_tune(tun, out, err);
    if (x->parsed()) return cmd_detect(det, out, err);
    if (b->parsed()) return cmd_bench(ben, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"kfsd"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace kfsd::cli

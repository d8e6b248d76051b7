#include "kfsd/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>

#include "kfsd/csv.hpp"
#include "kfsd/error.hpp"
#include "kfsd/parallel.hpp"

namespace kfsd {

Confusion confusion(std::span<const bool> flags, const std::vector<bool>& truth) {
  if (flags.size() != truth.size()) throw Error(ErrorCode::DimensionMismatch, "flags and labels differ in length");
  Confusion c;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (truth[i]) {
      (flags[i] ? c.tp : c.fn) += 1;
    } else {
      (flags[i] ? c.fp : c.tn) += 1;
    }
  }
  return c;
}

Confusion run_replication(const LabeledSample& dataset, const MethodSpec& method, const MethodSettings& settings,
                          RngStream& rng) {
  if (dataset.outlier.size() != dataset.sample.size())
    throw Error(ErrorCode::InvalidArgument, "dataset has no ground-truth labels");
  const DetectionReport report = run_method(dataset.sample, method, settings, rng);
  const std::vector<bool>& f = report.flags;
  // std::vector<bool> has no contiguous storage
  const std::unique_ptr<bool[]> buf(new bool[f.size()]);
  std::copy(f.begin(), f.end(), buf.get());
  return confusion(std::span<const bool>(buf.get(), f.size()), dataset.outlier);
}

double StudyCell::c() const noexcept {
  const auto total = outliers();
  return total ? 100.0 * static_cast<double>(counts.tp) / static_cast<double>(total)
               : std::numeric_limits<double>::quiet_NaN();
}

double StudyCell::f() const noexcept {
  const auto total = normals();
  return total ? 100.0 * static_cast<double>(counts.fp) / static_cast<double>(total)
               : std::numeric_limits<double>::quiet_NaN();
}

const StudyCell& StudyResult::cell(MixtureModel model, double alpha, const std::string& method) const {
  for (const auto& c : cells) {
    if (c.model == model && c.alpha == alpha && c.method == method) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "no study cell for " + std::string(to_string(model)) + "/" + method);
}

RngStream method_stream(MixtureModel model, double alpha, std::uint64_t master_seed, std::size_t r,
                        const MethodSpec& method) {
  return replication_stream(model, alpha, master_seed, r).split("method/" + method.label());
}

StudyResult run_study(const StudyConfig& cfg) {
  if (cfg.R < 1) throw Error(ErrorCode::InvalidArgument, "R must be at least 1");
  if (cfg.models.empty() || cfg.alphas.empty() || cfg.methods.empty())
    throw Error(ErrorCode::InvalidArgument, "study needs at least one model, alpha and method");

  struct Task {
    std::size_t model;
    std::size_t alpha;
    std::size_t r;
  };
  std::vector<Task> tasks;
  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi)
    for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai)
      for (std::size_t r = 0; r < cfg.R; ++r) tasks.push_back({mi, ai, r});

  std::vector<MixtureGenerator> generators;
  for (auto model : cfg.models)
    for (double alpha : cfg.alphas) generators.emplace_back(MixtureModelSpec{model, alpha, cfg.n, 51, cfg.noise});

  const std::size_t n_methods = cfg.methods.size();
  std::vector<Confusion> counts(tasks.size() * n_methods);

  parallel_for(tasks.size(), cfg.threads, [&](std::size_t t) {
    const Task& task = tasks[t];
    const MixtureModel model = cfg.models[task.model];
    const double alpha = cfg.alphas[task.alpha];
    RngStream data_rng = replication_stream(model, alpha, cfg.master_seed, task.r);
    const LabeledSample dataset = generators[task.model * cfg.alphas.size() + task.alpha].draw_dataset(data_rng);
    MethodSettings settings = cfg.settings;
    settings.alpha = alpha;
    for (std::size_t k = 0; k < n_methods; ++k) {
      RngStream rng = method_stream(model, alpha, cfg.master_seed, task.r, cfg.methods[k]);
      counts[t * n_methods + k] = run_replication(dataset, cfg.methods[k], settings, rng);
    }
  });

  StudyResult result;
  result.R = cfg.R;
  result.master_seed = cfg.master_seed;
  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
    for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
      for (std::size_t k = 0; k < n_methods; ++k) {
        StudyCell cell;
        cell.model = cfg.models[mi];
        cell.alpha = cfg.alphas[ai];
        cell.method = cfg.methods[k].label();
        cell.replications = cfg.R;
        result.cells.push_back(std::move(cell));
      }
    }
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const std::size_t base = (tasks[t].model * cfg.alphas.size() + tasks[t].alpha) * n_methods;
    for (std::size_t k = 0; k < n_methods; ++k) result.cells[base + k].counts += counts[t * n_methods + k];
  }
  return result;
}

namespace {

std::string fixed2(double v) {
  if (!std::isfinite(v)) return "NA";
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

}  // namespace

void write_study_csv(std::ostream& out, const StudyResult& result) {
  out << "model,alpha,method,c,f,tp,fn,fp,tn,outliers,normals,replications,master_seed\n";
  for (const auto& cell : result.cells) {
    out << to_string(cell.model) << ',' << format_double(cell.alpha) << ',' << cell.method << ','
        << format_double(cell.c()) << ',' << format_double(cell.f()) << ',' << cell.counts.tp << ','
        << cell.counts.fn << ',' << cell.counts.fp << ',' << cell.counts.tn << ',' << cell.outliers() << ','
        << cell.normals() << ',' << cell.replications << ',' << result.master_seed << '\n';
  }
}

void write_study_table(std::ostream& out, const StudyResult& result) {
  std::size_t width = 6;
  for (const auto& cell : result.cells) width = std::max(width, cell.method.size());
  const StudyCell* prev = nullptr;
  for (const auto& cell : result.cells) {
    if (!prev || prev->model != cell.model || prev->alpha != cell.alpha) {
      if (prev) out << '\n';
      out << to_string(cell.model) << ", alpha = " << fixed2(cell.alpha) << " (R = " << result.R << ")\n";
      out << std::left << std::setw(static_cast<int>(width)) << "method" << std::right << std::setw(9) << "c"
          << std::setw(9) << "f" << '\n';
    }
    out << std::left << std::setw(static_cast<int>(width)) << cell.method << std::right << std::setw(9)
        << fixed2(cell.c()) << std::setw(9) << fixed2(cell.f()) << '\n';
    prev = &cell;
  }
}

double RankingResult::percentage() const noexcept {
  return outliers ? 100.0 * static_cast<double>(hits) / static_cast<double>(outliers)
                  : std::numeric_limits<double>::quiet_NaN();
}

std::vector<std::size_t> lowest_k(std::span<const double> depths, std::size_t k) {
  std::vector<std::size_t> idx(depths.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  k = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) { return depths[a] < depths[b] || (depths[a] == depths[b] && a < b); });
  idx.resize(k);
  return idx;
}

std::vector<RankingResult> ranking_experiment(MixtureModel model, double alpha, std::span<const DepthId> depths,
                                              std::size_t R, std::uint64_t master_seed, std::size_t n,
                                              const DepthSpec& defaults, NoiseMode noise, std::size_t threads) {
  if (R < 1) throw Error(ErrorCode::InvalidArgument, "R must be at least 1");
  const MixtureGenerator gen(MixtureModelSpec{model, alpha, n, 51, noise});
  std::vector<RankingResult> per_task(R * depths.size());

  parallel_for(R, threads, [&](std::size_t r) {
    RngStream data_rng = replication_stream(model, alpha, master_seed, r);
    const LabeledSample ds = gen.draw_dataset(data_rng);
    if (ds.n_out == 0) return;
    for (std::size_t k = 0; k < depths.size(); ++k) {
      DepthSpec spec = defaults;
      spec.id = depths[k];
      spec.projection_seed = replication_stream(model, alpha, master_seed, r).split("projections")();
      const DepthScores scores = depth_all(ds.sample, resolve_depth_params(spec, ds.sample));
      RankingResult& out = per_task[r * depths.size() + k];
      out.outliers = ds.n_out;
      for (std::size_t i : lowest_k(scores.values, ds.n_out)) out.hits += ds.outlier[i] ? 1 : 0;
    }
  });

  std::vector<RankingResult> result(depths.size());
  for (std::size_t k = 0; k < depths.size(); ++k) {
    result[k].depth = depths[k];
    for (std::size_t r = 0; r < R; ++r) {
      result[k].hits += per_task[r * depths.size() + k].hits;
      result[k].outliers += per_task[r * depths.size() + k].outliers;
    }
  }
  return result;
}

}  // namespace kfsd

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "kfsd/detect.hpp"
#include "kfsd/report.hpp"
#include "kfsd/rng.hpp"

namespace kfsd {

namespace {

using nlohmann::json;

void dump_canonical(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::null:
      out += "null";
      break;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[40];
        out.append(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
      }
      break;
    }
    case json::value_t::string:
      out += j.dump();
      break;
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        dump_canonical(v, out);
      }
      out += ']';
      break;
    }
    case json::value_t::object: {
      // object_t is an ordered std::map, so iteration is already key-sorted.
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        dump_canonical(value, out);
      }
      out += '}';
      break;
    }
    case json::value_t::binary:
    case json::value_t::discarded:
      out += "null";
      break;
  }
}

std::string canonical(const json& j) {
  std::string out;
  dump_canonical(j, out);
  return out;
}

json to_json(const ConfigEcho& config) {
  json j = json::object();
  for (const auto& [key, value] : config) {
    std::visit([&](const auto& v) { j[key] = v; }, value);
  }
  return j;
}

json to_json(const DepthParams& p) {
  json j = json::object();
  switch (p.id) {
    case DepthId::KFSD:
      j["kernel"] = p.kernel.kind == KernelKind::Gaussian ? "gaussian" : "linear";
      j["sigma"] = p.kernel.sigma;
      j["sigma_percentile"] = p.kfsd_percentile;
      break;
    case DepthId::HMD:
      j["h"] = p.hmd_bandwidth;
      j["h_percentile"] = p.hmd_percentile;
      break;
    case DepthId::RTD:
    case DepthId::IDD:
      if (p.projections) {
        j["projections"] = p.projections->size();
        j["projection_seed"] = p.projections->seed();
      }
      break;
    case DepthId::FSD:
    case DepthId::FMD:
    case DepthId::MBD:
      break;
  }
  return j;
}

json depth_json(const DepthScores& scores) {
  return {
      {"id", std::string(to_string(scores.id))},
      {"params", to_json(scores.params)},
      {"values", scores.values},
  };
}

json envelope(const ConfigEcho& config, std::uint64_t seed) {
  json j = json::object();
  j["seed"] = seed;
  j["config"] = to_json(config);
  j["config_hash"] = config_hash(config);
  return j;
}

}  // namespace

std::string config_hash(const ConfigEcho& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical(to_json(config)))));
  return buf;
}

std::string to_canonical_json(const DetectionReport& report) {
  json j = json::object();
  j["method"] = report.method;
  j["n"] = report.flags.size();
  j["seed"] = report.seed;
  j["config"] = to_json(report.config);
  j["config_hash"] = config_hash(report.config);
  j["threshold"] = report.threshold ? json(*report.threshold) : json(nullptr);
  j["tuned_percentile"] = report.tuned_percentile ? json(*report.tuned_percentile) : json(nullptr);
  json flags = json::array();
  for (bool f : report.flags) flags.push_back(f);
  j["flags"] = std::move(flags);
  j["flagged"] = report.flagged();
  j["depth"] = depth_json(report.depth_scores);
  j["warnings"] = report.warnings;
  return canonical(j);
}

std::string to_canonical_json(const DepthScores& scores, const ConfigEcho& config, std::uint64_t seed) {
  json j = envelope(config, seed);
  j["n"] = scores.values.size();
  j["depth"] = depth_json(scores);
  return canonical(j);
}

std::string to_canonical_json(const TuningResult& result, const TuningConfig& tuning, const ConfigEcho& config,
                              std::uint64_t seed) {
  json j = envelope(config, seed);
  j["percentile"] = result.percentile;
  j["fallback"] = result.fallback;
  j["attempts"] = result.attempts;
  j["candidates"] = tuning.candidates;
  j["rank_sums"] = result.rank_sums;
  j["peripheral_curves"] = result.peripheral.size();
  json reps = json::array();
  for (const auto& r : result.peripheral.replications) reps.push_back({{"percentile", r.percentile}, {"count", r.count}});
  j["replications"] = std::move(reps);
  return canonical(j);
}

std::string to_canonical_json(const StudyResult& result, const ConfigEcho& config) {
  json j = envelope(config, result.master_seed);
  j["R"] = result.R;
  json cells = json::array();
  for (const auto& c : result.cells) {
    cells.push_back({
        {"model", std::string(to_string(c.model))},
        {"alpha", c.alpha},
        {"method", c.method},
        {"c", c.c()},
        {"f", c.f()},
        {"tp", c.counts.tp},
        {"fn", c.counts.fn},
        {"fp", c.counts.fp},
        {"tn", c.counts.tn},
        {"replications", c.replications},
    });
  }
  j["cells"] = std::move(cells);
  return canonical(j);
}

std::string manifest_json(const ConfigEcho& config, std::uint64_t seed, const std::vector<std::string>& files) {
  json j = envelope(config, seed);
  j["files"] = files;
  return canonical(j);
}

}  // namespace kfsd

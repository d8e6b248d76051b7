#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kfsd/depths.hpp"
#include "kfsd/detect.hpp"
#include "kfsd/experiment.hpp"
#include "kfsd/tune.hpp"

namespace kfsd {

// Canonical JSON for the remaining artifacts. Each embeds the seed, the config
// echo and its hash, with the same formatting rules as detection reports.

std::string to_canonical_json(const DepthScores& scores, const ConfigEcho& config, std::uint64_t seed);
std::string to_canonical_json(const TuningResult& result, const TuningConfig& tuning, const ConfigEcho& config,
                              std::uint64_t seed);
std::string to_canonical_json(const StudyResult& result, const ConfigEcho& config);
std::string manifest_json(const ConfigEcho& config, std::uint64_t seed, const std::vector<std::string>& files);

}  // namespace kfsd

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace kfsd {

/// Seeded random stream identified by (seed, stream_id).
///
/// Identical (seed, stream_id) pairs reproduce identical draws within a build.
/// Sub-streams are derived with split(); a child depends only on its parent's
/// identity and the split key, never on how many draws the parent has made, so
/// work can be handed to parallel workers without changing results.
class RngStream {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  RngStream split(std::uint64_t key) const;
  RngStream split(std::string_view key) const;

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  double uniform(double lo, double hi);
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// FNV-1a, stable across platforms and builds (std::hash is not).
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace kfsd

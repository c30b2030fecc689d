#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace antmesh {

// Stream labels used by the simulator. Each consumer draws from its own
// stream so that adding draws in one place leaves the others untouched.
inline constexpr std::string_view kAntStream = "ant-forwarding";
inline constexpr std::string_view kTrafficStream = "traffic";
inline constexpr std::string_view kMobilityStream = "mobility";
inline constexpr std::string_view kLossStream = "loss";

/// Deterministic random stream keyed by (seed, label).
///
/// The engine is mt19937_64, whose output sequence is fixed by the standard,
/// and all derived values are computed here rather than through the
/// implementation-defined std distributions.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view label);

  std::uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform real in [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::uint64_t seed_;
  std::string label_;
  std::mt19937_64 engine_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::string_view label);

}  // namespace antmesh

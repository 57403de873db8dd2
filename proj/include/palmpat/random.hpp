// ============================================================================
// random.hpp -- seeded streams and counter-based seed splitting
//
// Every stochastic operation takes an explicit 64-bit seed. Independent tasks
// (simulations, trials, reference streams) get their own seed via
// derive_seed(master, tags...), so results do not depend on the order or the
// thread in which tasks run. Variate conversions are written out here rather
// than taken from <random> distributions, whose output is
// implementation-defined.
// ============================================================================
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>

#include "palmpat/geometry.hpp"

namespace palmpat {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for a sub-stream identified by a sequence of integer tags.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags);

/// Stream tags used across modules.
namespace stream {
inline constexpr std::uint64_t kReference = 0x52454631;     // F reference points
inline constexpr std::uint64_t kCsr = 0x43535231;           // envelope null patterns
inline constexpr std::uint64_t kSimulation = 0x53494d31;    // reproduction trials
inline constexpr std::uint64_t kObserved = 0x4f425331;      // observed-pattern F stream
}  // namespace stream

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform index in [0, n) by rejection (unbiased).
  std::size_t index(std::size_t n);

  /// Two independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair();

  Point uniform_point(const Window& w) {
    const double x = uniform(w.x_min, w.x_max);
    const double y = uniform(w.y_min, w.y_max);
    return {x, y};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace palmpat

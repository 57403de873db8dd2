// ============================================================================
// ripley.hpp -- empirical G, F and J functions and nearest-neighbor summaries
//
// Raw empirical fractions without edge correction, using the strict
// inequality 1(d_i < d): a nearest-neighbor distance equal to d does not
// count at d.
// ============================================================================
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "palmpat/geometry.hpp"

namespace palmpat {

/// Strictly increasing, nonnegative evaluation distances.
class DistanceGrid {
 public:
  explicit DistanceGrid(std::vector<double> values);

  /// `steps` evenly spaced distances from 0 to max_distance inclusive.
  static DistanceGrid linspace(double max_distance, std::size_t steps);

  /// 100 distances from 0 to half the shorter window side.
  static DistanceGrid default_for(const Window& window);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const DistanceGrid&, const DistanceGrid&) = default;

 private:
  std::vector<double> values_;
};

/// A statistic evaluated on a grid. Entries that have no numeric value
/// (J where F reaches 1) are std::nullopt.
struct RipleyCurve {
  DistanceGrid grid;
  std::vector<std::optional<double>> values;

  bool fully_defined() const;
  /// Values as plain doubles; throws InvalidInput if any entry is undefined.
  std::vector<double> dense() const;
};

/// Reference-point count used for F when none is given: max(1000, n).
std::size_t default_reference_count(std::size_t n_points);

/// Uniform reference points for F drawn from the seeded stream.
std::vector<Point> reference_points(const Window& window, std::size_t n_ref, std::uint64_t seed);

/// G(d) = fraction of points whose nearest-neighbor distance is < d.
RipleyCurve g_function(const PointPattern& pattern, const DistanceGrid& grid);

/// F(d) = fraction of n_ref uniform reference points whose distance to the
/// nearest event is < d. Deterministic for a given seed at any worker count.
RipleyCurve f_function(const PointPattern& pattern, const DistanceGrid& grid, std::size_t n_ref,
                       std::uint64_t seed, std::size_t workers = 1);

/// J = (1 - G) / (1 - F); undefined where F == 1.
RipleyCurve j_function(const RipleyCurve& g, const RipleyCurve& f);

/// Fraction of `distances` strictly below each grid value.
RipleyCurve empirical_cdf_strict(std::vector<double> distances, const DistanceGrid& grid);

struct Histogram {
  std::vector<double> edges;          // bins + 1 edges
  std::vector<std::size_t> counts;    // last bin is closed on the right
};

struct NeighborStats {
  std::vector<double> per_point;  // mean of each point's k nearest distances
  double mean = 0.0;
  double median = 0.0;
  double std = 0.0;  // sample (n-1) standard deviation
  double min = 0.0;
  double max = 0.0;
  Histogram histogram;
};

/// Summary of per-point mean k-nearest-neighbor distances.
NeighborStats nn_stats(const PointPattern& pattern, std::size_t k, std::size_t bins);

// Descriptive helpers shared with the counting report.
double mean_of(const std::vector<double>& values);
double median_of(std::vector<double> values);
double sample_std_of(const std::vector<double>& values);
Histogram histogram_of(const std::vector<double>& values, std::size_t bins);

}  // namespace palmpat

#include "palmpat/ripley.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "palmpat/parallel.hpp"
#include "palmpat/random.hpp"
#include "palmpat/spatial_index.hpp"

namespace palmpat {

DistanceGrid::DistanceGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidInput("distance grid must not be empty");
  if (!std::isfinite(values_[0]) || values_[0] < 0.0) {
    throw InvalidInput("distance grid must start at a finite value >= 0");
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || !(values_[i] > values_[i - 1])) {
      throw InvalidInput("distance grid must be strictly increasing (index " +
                         std::to_string(i) + ")");
    }
  }
}

DistanceGrid DistanceGrid::linspace(double max_distance, std::size_t steps) {
  if (steps < 2) throw InvalidInput("distance grid needs at least 2 steps");
  if (!(max_distance > 0.0) || !std::isfinite(max_distance)) {
    throw InvalidInput("distance grid maximum must be positive and finite");
  }
  std::vector<double> v(steps);
  const double last = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) v[i] = max_distance * static_cast<double>(i) / last;
  return DistanceGrid(std::move(v));
}

DistanceGrid DistanceGrid::default_for(const Window& window) {
  validate(window);
  return linspace(window.shorter_side() / 2.0, 100);
}

bool RipleyCurve::fully_defined() const {
  return std::all_of(values.begin(), values.end(), [](const auto& v) { return v.has_value(); });
}

std::vector<double> RipleyCurve::dense() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) throw InvalidInput("curve is undefined at grid index " + std::to_string(i));
    out.push_back(*values[i]);
  }
  return out;
}

std::size_t default_reference_count(std::size_t n_points) {
  return std::max<std::size_t>(1000, n_points);
}

std::vector<Point> reference_points(const Window& window, std::size_t n_ref, std::uint64_t seed) {
  validate(window);
  Rng rng(seed);
  std::vector<Point> refs(n_ref);
  for (auto& r : refs) r = rng.uniform_point(window);
  return refs;
}

RipleyCurve empirical_cdf_strict(std::vector<double> distances, const DistanceGrid& grid) {
  if (distances.empty()) throw InvalidInput("empirical CDF of an empty sample");
  std::sort(distances.begin(), distances.end());
  const double n = static_cast<double>(distances.size());
  RipleyCurve curve{grid, {}};
  curve.values.reserve(grid.size());
  for (double d : grid.values()) {
    const auto below = std::lower_bound(distances.begin(), distances.end(), d) - distances.begin();
    curve.values.emplace_back(static_cast<double>(below) / n);
  }
  return curve;
}

RipleyCurve g_function(const PointPattern& pattern, const DistanceGrid& grid) {
  if (pattern.size() < 2) throw InvalidInput("G function needs at least 2 points");
  return empirical_cdf_strict(nearest_neighbor_distance(pattern), grid);
}

RipleyCurve f_function(const PointPattern& pattern, const DistanceGrid& grid, std::size_t n_ref,
                       std::uint64_t seed, std::size_t workers) {
  if (pattern.empty()) throw InvalidInput("F function needs a nonempty pattern");
  if (n_ref < 1) throw InvalidInput("F function needs at least one reference point");
  const std::vector<Point> refs = reference_points(pattern.window(), n_ref, seed);
  const GridIndex index(pattern.points());
  std::vector<double> distances(n_ref);
  parallel_for(n_ref, workers, [&](std::size_t j) { distances[j] = index.nearest(refs[j]); });
  return empirical_cdf_strict(std::move(distances), grid);
}

RipleyCurve j_function(const RipleyCurve& g, const RipleyCurve& f) {
  if (!(g.grid == f.grid) || g.values.size() != f.values.size()) {
    throw InvalidInput("G and F curves must share the same grid");
  }
  RipleyCurve j{g.grid, {}};
  j.values.reserve(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    if (!g.values[i] || !f.values[i] || *f.values[i] >= 1.0) {
      j.values.emplace_back(std::nullopt);
    } else {
      j.values.emplace_back((1.0 - *g.values[i]) / (1.0 - *f.values[i]));
    }
  }
  return j;
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) throw InvalidInput("mean of an empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw InvalidInput("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double sample_std_of(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double m = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

Histogram histogram_of(const std::vector<double>& values, std::size_t bins) {
  if (bins < 1) throw InvalidInput("histogram needs at least one bin");
  if (values.empty()) throw InvalidInput("histogram of an empty sample");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (!(hi > lo)) {
    // degenerate sample: centre a unit-wide range on the single value
    lo -= 0.5;
    hi += 0.5;
  }
  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
  }
  h.edges[bins] = hi;
  h.counts.assign(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    auto b = static_cast<std::size_t>(std::max(0.0, std::floor((v - lo) / width)));
    b = std::min(b, bins - 1);
    ++h.counts[b];
  }
  return h;
}

NeighborStats nn_stats(const PointPattern& pattern, std::size_t k, std::size_t bins) {
  const auto knn = nearest_neighbor_distances(pattern, k);
  NeighborStats s;
  s.per_point.reserve(knn.size());
  for (const auto& row : knn) {
    s.per_point.push_back(std::accumulate(row.begin(), row.end(), 0.0) /
                          static_cast<double>(row.size()));
  }
  s.mean = mean_of(s.per_point);
  s.median = median_of(s.per_point);
  s.std = sample_std_of(s.per_point);
  const auto [lo, hi] = std::minmax_element(s.per_point.begin(), s.per_point.end());
  s.min = *lo;
  s.max = *hi;
  s.histogram = histogram_of(s.per_point, bins);
  return s;
}

}  // namespace palmpat

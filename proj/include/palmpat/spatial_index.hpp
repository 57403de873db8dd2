// ============================================================================
// spatial_index.hpp -- uniform-grid bucket index for exact k-NN distances
// ============================================================================
#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "palmpat/geometry.hpp"

namespace palmpat {

/// Buckets points into square cells over their bounding box. Queries expand
/// ring by ring and stop once no unvisited cell can beat the current k-th
/// best distance, so results equal a brute-force scan bit for bit.
class GridIndex {
 public:
  static constexpr std::size_t kNoExclude = std::numeric_limits<std::size_t>::max();

  explicit GridIndex(std::span<const Point> points, double points_per_cell = 2.0);

  std::size_t size() const { return xs_.size(); }

  /// Writes the k smallest distances from q into out (ascending). The point
  /// with original index `exclude` is skipped. k must not exceed the number
  /// of eligible points.
  void k_nearest(Point q, std::size_t k, std::size_t exclude, std::vector<double>& out) const;

  /// Distance from q to the closest indexed point.
  double nearest(Point q, std::size_t exclude = kNoExclude) const;

 private:
  std::size_t cell_col(double x) const;
  std::size_t cell_row(double y) const;

  double x0_ = 0.0;
  double y0_ = 0.0;
  double cell_ = 1.0;
  std::size_t cols_ = 1;
  std::size_t rows_ = 1;
  std::vector<std::size_t> cell_start_;  // rows_*cols_ + 1 offsets
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<std::size_t> ids_;
};

}  // namespace palmpat

// ============================================================================
// detections.hpp -- detector post-processing: tiles, NMS, centers, counting
// ============================================================================
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "palmpat/geometry.hpp"

namespace palmpat {

/// Sliding-window patch layout. Tile (row, col) covers
/// [origin.x + col*stride, +patch_size] x [origin.y + row*stride, +patch_size];
/// x grows with the column index and y with the row index.
struct TileLayout {
  int patch_size = 800;
  int stride = 400;
  Point origin{0.0, 0.0};
};

void validate(const TileLayout& layout);

struct TileDetection {
  long tile_row = 0;
  long tile_col = 0;
  Box box;  // patch-local coordinates
};

/// Detector output. Without a layout the boxes are already global and the
/// tile indices are ignored.
struct DetectionSet {
  std::optional<TileLayout> layout;
  std::vector<TileDetection> boxes;
};

Box to_global(const TileLayout& layout, long tile_row, long tile_col, const Box& box);
Box to_local(const TileLayout& layout, long tile_row, long tile_col, const Box& box);

/// Maps every detection into global coordinates, checking that each
/// patch-local box fits inside its patch.
std::vector<Box> globalize(const DetectionSet& detections);

inline constexpr double kDefaultIouThreshold = 0.5;

/// Greedy NMS: visit boxes by descending confidence (ties: earlier input
/// first) and keep a box iff its IoU with every kept box is < threshold.
std::vector<Box> merge_nms(const std::vector<Box>& boxes, double iou_threshold);

std::vector<Point> centers(const std::vector<Box>& boxes);

inline constexpr double kDefaultMatchRadius = 5.0;

struct Match {
  std::size_t detected_index = 0;
  std::size_t labeled_index = 0;
  Point detected;
  Point labeled;
  double distance = 0.0;
};

struct MatchReport {
  std::vector<Match> matched;  // in matching order (ascending distance)
  std::size_t n_labeled = 0;
  std::size_t n_detected = 0;
  double radius = 0.0;
  std::optional<double> accuracy;            // matched / n_labeled
  std::optional<double> detected_rate;       // matched / n_detected
  std::optional<double> shift_mean;
  std::optional<double> shift_median;
  std::optional<double> shift_std;           // sample (n-1); 0 for one match

  std::vector<double> shifts() const;
};

/// One-to-one greedy matching of detected to labeled centers within radius,
/// nearest pairs first (ties: lower labeled index, then lower detected index).
MatchReport match_counts(const std::vector<Point>& detected, const std::vector<Point>& labeled,
                         double radius = kDefaultMatchRadius);

}  // namespace palmpat

#include "palmpat/detections.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "palmpat/ripley.hpp"

namespace palmpat {

void validate(const TileLayout& layout) {
  if (layout.patch_size <= 0) throw InvalidInput("patch size must be positive");
  if (layout.stride <= 0 || layout.stride > layout.patch_size) {
    throw InvalidInput("stride must satisfy 0 < stride <= patch_size");
  }
  if (!std::isfinite(layout.origin.x) || !std::isfinite(layout.origin.y)) {
    throw InvalidInput("tile origin must be finite");
  }
}

namespace {

Point tile_offset(const TileLayout& layout, long tile_row, long tile_col) {
  if (tile_row < 0 || tile_col < 0) throw InvalidInput("tile indices must be nonnegative");
  return {layout.origin.x + static_cast<double>(tile_col) * layout.stride,
          layout.origin.y + static_cast<double>(tile_row) * layout.stride};
}

}  // namespace

Box to_global(const TileLayout& layout, long tile_row, long tile_col, const Box& box) {
  validate(layout);
  const Point off = tile_offset(layout, tile_row, tile_col);
  return {box.x_min + off.x, box.y_min + off.y, box.x_max + off.x, box.y_max + off.y,
          box.confidence};
}

Box to_local(const TileLayout& layout, long tile_row, long tile_col, const Box& box) {
  validate(layout);
  const Point off = tile_offset(layout, tile_row, tile_col);
  return {box.x_min - off.x, box.y_min - off.y, box.x_max - off.x, box.y_max - off.y,
          box.confidence};
}

std::vector<Box> globalize(const DetectionSet& detections) {
  std::vector<Box> out;
  out.reserve(detections.boxes.size());
  for (std::size_t i = 0; i < detections.boxes.size(); ++i) {
    const TileDetection& d = detections.boxes[i];
    validate(d.box);
    if (!detections.layout) {
      out.push_back(d.box);
      continue;
    }
    const double size = detections.layout->patch_size;
    if (d.box.x_min < 0.0 || d.box.y_min < 0.0 || d.box.x_max > size || d.box.y_max > size) {
      throw InvalidInput("detection " + std::to_string(i) + " does not fit inside its patch");
    }
    out.push_back(to_global(*detections.layout, d.tile_row, d.tile_col, d.box));
  }
  return out;
}

std::vector<Box> merge_nms(const std::vector<Box>& boxes, double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw InvalidInput("IoU threshold must lie in (0, 1]");
  }
  for (const Box& b : boxes) validate(b);
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return boxes[a].confidence > boxes[b].confidence;
  });
  std::vector<Box> kept;
  for (std::size_t idx : order) {
    const Box& candidate = boxes[idx];
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const Box& k) {
      return iou(candidate, k) >= iou_threshold;
    });
    if (!suppressed) kept.push_back(candidate);
  }
  return kept;
}

std::vector<Point> centers(const std::vector<Box>& boxes) {
  std::vector<Point> out;
  out.reserve(boxes.size());
  for (const Box& b : boxes) out.push_back({(b.x_min + b.x_max) / 2.0, (b.y_min + b.y_max) / 2.0});
  return out;
}

std::vector<double> MatchReport::shifts() const {
  std::vector<double> out;
  out.reserve(matched.size());
  for (const Match& m : matched) out.push_back(m.distance);
  return out;
}

MatchReport match_counts(const std::vector<Point>& detected, const std::vector<Point>& labeled,
                         double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidInput("match radius must be positive and finite");
  }
  struct Candidate {
    double distance;
    std::size_t labeled;
    std::size_t detected;
  };
  std::vector<Candidate> candidates;
  for (std::size_t l = 0; l < labeled.size(); ++l) {
    for (std::size_t d = 0; d < detected.size(); ++d) {
      const double dist = euclidean_distance(detected[d], labeled[l]);
      if (dist <= radius) candidates.push_back({dist, l, d});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.distance, a.labeled, a.detected) <
           std::tie(b.distance, b.labeled, b.detected);
  });

  MatchReport r;
  r.n_labeled = labeled.size();
  r.n_detected = detected.size();
  r.radius = radius;
  std::vector<bool> label_used(labeled.size(), false);
  std::vector<bool> detection_used(detected.size(), false);
  for (const Candidate& c : candidates) {
    if (label_used[c.labeled] || detection_used[c.detected]) continue;
    label_used[c.labeled] = true;
    detection_used[c.detected] = true;
    r.matched.push_back({c.detected, c.labeled, detected[c.detected], labeled[c.labeled],
                         c.distance});
  }

  const auto matched = static_cast<double>(r.matched.size());
  if (r.n_labeled > 0) r.accuracy = matched / static_cast<double>(r.n_labeled);
  if (r.n_detected > 0) r.detected_rate = matched / static_cast<double>(r.n_detected);
  if (!r.matched.empty()) {
    const std::vector<double> s = r.shifts();
    r.shift_mean = mean_of(s);
    r.shift_median = median_of(s);
    r.shift_std = sample_std_of(s);
  }
  return r;
}

}  // namespace palmpat

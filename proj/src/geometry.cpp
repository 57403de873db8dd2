#include "palmpat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "palmpat/spatial_index.hpp"

namespace palmpat {

double Window::shorter_side() const { return std::min(width(), height()); }

double Window::diagonal() const { return std::sqrt(width() * width() + height() * height()); }

void validate(const Window& w) {
  if (!std::isfinite(w.x_min) || !std::isfinite(w.y_min) || !std::isfinite(w.x_max) ||
      !std::isfinite(w.y_max)) {
    throw InvalidInput("window bounds must be finite");
  }
  if (!(w.x_min < w.x_max) || !(w.y_min < w.y_max)) {
    throw InvalidInput("window must have positive area (x_min < x_max, y_min < y_max)");
  }
}

PointPattern::PointPattern(Window window, std::vector<Point> points)
    : window_(window), points_(std::move(points)) {
  validate(window_);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidInput("point " + std::to_string(i) + " has non-finite coordinates");
    }
    if (!window_.contains(p)) {
      throw InvalidInput("point " + std::to_string(i) + " lies outside the window");
    }
  }
}

void validate(const Box& b) {
  if (!std::isfinite(b.x_min) || !std::isfinite(b.y_min) || !std::isfinite(b.x_max) ||
      !std::isfinite(b.y_max)) {
    throw InvalidInput("box coordinates must be finite");
  }
  if (!(b.x_min < b.x_max) || !(b.y_min < b.y_max)) {
    throw InvalidInput("box must satisfy x_min < x_max and y_min < y_max");
  }
  if (!(b.confidence >= 0.0 && b.confidence <= 1.0)) {
    throw InvalidInput("box confidence must lie in [0, 1]");
  }
}

double euclidean_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double iou(const Box& a, const Box& b) {
  const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return inter / uni;
}

std::vector<std::vector<double>> nearest_neighbor_distances(const PointPattern& pattern,
                                                            std::size_t k) {
  const std::size_t n = pattern.size();
  if (n < 2) throw InvalidInput("nearest-neighbor distances need at least 2 points");
  if (k < 1 || k > n - 1) {
    throw InvalidInput("k must satisfy 1 <= k <= n-1 (n=" + std::to_string(n) +
                       ", k=" + std::to_string(k) + ")");
  }
  const GridIndex index(pattern.points());
  std::vector<std::vector<double>> out(n);
  for (std::size_t i = 0; i < n; ++i) index.k_nearest(pattern[i], k, i, out[i]);
  return out;
}

std::vector<double> nearest_neighbor_distance(const PointPattern& pattern) {
  const std::size_t n = pattern.size();
  if (n < 2) throw InvalidInput("nearest-neighbor distances need at least 2 points");
  const GridIndex index(pattern.points());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = index.nearest(pattern[i], i);
  return out;
}

}  // namespace palmpat

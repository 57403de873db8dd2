// ============================================================================
// geometry.hpp -- points, windows, boxes and exact neighbor queries
//
// Coordinates are in working units (meters once the CLI has applied
// units_per_meter). Every other module builds on these types.
// ============================================================================
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace palmpat {

/// Raised when an operation's preconditions are violated by its inputs.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangular observation window. Boundary counts as inside.
struct Window {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 1.0;
  double y_max = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  double shorter_side() const;
  double diagonal() const;
  bool contains(Point p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }

  friend bool operator==(const Window&, const Window&) = default;
};

/// Throws InvalidInput unless the window has finite bounds and positive area.
void validate(const Window& w);

/// A finite set of events inside a window. Construction enforces containment.
class PointPattern {
 public:
  PointPattern(Window window, std::vector<Point> points);

  const Window& window() const { return window_; }
  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  friend bool operator==(const PointPattern&, const PointPattern&) = default;

 private:
  Window window_;
  std::vector<Point> points_;
};

/// Detection bounding box with a confidence score.
struct Box {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
  double confidence = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }

  friend bool operator==(const Box&, const Box&) = default;
};

void validate(const Box& b);

double euclidean_distance(Point a, Point b);

/// Intersection over union of two valid boxes (confidence is ignored).
double iou(const Box& a, const Box& b);

/// For every point, its k smallest distances to the other points, ascending.
/// Exact; self is excluded by index, so coincident points report 0.
/// Requires size() >= 2 and 1 <= k <= size() - 1.
std::vector<std::vector<double>> nearest_neighbor_distances(const PointPattern& pattern,
                                                            std::size_t k);

/// Distance from each point to its single nearest neighbor.
std::vector<double> nearest_neighbor_distance(const PointPattern& pattern);

}  // namespace palmpat

#include "palmpat/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace palmpat {

namespace {

// Cell edges are recomputed from x0 + j*cell, which can disagree with the
// floor() used for bucketing by a few ulps; lower bounds shrink by this much.
constexpr double kEdgeSlack = 1e-9;

void insert_sorted(std::vector<double>& best, std::size_t k, double d) {
  if (best.size() == k) {
    if (!(d < best.back())) return;
    best.pop_back();
  }
  best.insert(std::upper_bound(best.begin(), best.end(), d), d);
}

}  // namespace

GridIndex::GridIndex(std::span<const Point> points, double points_per_cell) {
  const std::size_t n = points.size();
  if (n == 0) {
    cell_start_.assign(2, 0);
    return;
  }
  double x_lo = points[0].x, x_hi = points[0].x;
  double y_lo = points[0].y, y_hi = points[0].y;
  for (const Point& p : points) {
    x_lo = std::min(x_lo, p.x);
    x_hi = std::max(x_hi, p.x);
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  x0_ = x_lo;
  y0_ = y_lo;
  const double w = x_hi - x_lo;
  const double h = y_hi - y_lo;
  const double extent = std::max(w, h);
  const double per_cell = std::max(points_per_cell, 1e-3);
  if (extent > 0.0) {
    const double by_area = std::sqrt(w * h * per_cell / static_cast<double>(n));
    const double by_extent = extent * per_cell / static_cast<double>(n);
    cell_ = std::max(by_area, by_extent);
    cols_ = static_cast<std::size_t>(std::floor(w / cell_)) + 1;
    rows_ = static_cast<std::size_t>(std::floor(h / cell_)) + 1;
  }

  const std::size_t cells = rows_ * cols_;
  std::vector<std::size_t> cell_of(n);
  cell_start_.assign(cells + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    cell_of[i] = cell_row(points[i].y) * cols_ + cell_col(points[i].x);
    ++cell_start_[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) cell_start_[c + 1] += cell_start_[c];

  xs_.resize(n);
  ys_.resize(n);
  ids_.resize(n);
  std::vector<std::size_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t slot = cursor[cell_of[i]]++;
    xs_[slot] = points[i].x;
    ys_[slot] = points[i].y;
    ids_[slot] = i;
  }
}

std::size_t GridIndex::cell_col(double x) const {
  const double t = (x - x0_) / cell_;
  if (!(t > 0.0)) return 0;
  if (t >= static_cast<double>(cols_)) return cols_ - 1;
  return std::min(cols_ - 1, static_cast<std::size_t>(t));
}

std::size_t GridIndex::cell_row(double y) const {
  const double t = (y - y0_) / cell_;
  if (!(t > 0.0)) return 0;
  if (t >= static_cast<double>(rows_)) return rows_ - 1;
  return std::min(rows_ - 1, static_cast<std::size_t>(t));
}

void GridIndex::k_nearest(Point q, std::size_t k, std::size_t exclude,
                          std::vector<double>& out) const {
  out.clear();
  if (k == 0) return;
  const std::size_t eligible =
      size() - ((exclude != kNoExclude && exclude < size()) ? 1 : 0);
  if (k > eligible) throw InvalidInput("k exceeds the number of indexed points");
  out.reserve(k + 1);

  const auto qc = static_cast<long long>(cell_col(q.x));
  const auto qr = static_cast<long long>(cell_row(q.y));
  const auto cols = static_cast<long long>(cols_);
  const auto rows = static_cast<long long>(rows_);
  const double slack = kEdgeSlack * cell_;

  auto visit = [&](long long r, long long c) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) return;
    if (out.size() == k) {
      // skip cells that cannot contain anything closer than the k-th best
      const double cx0 = x0_ + static_cast<double>(c) * cell_;
      const double cy0 = y0_ + static_cast<double>(r) * cell_;
      const double dx = std::max({0.0, cx0 - q.x, q.x - (cx0 + cell_)});
      const double dy = std::max({0.0, cy0 - q.y, q.y - (cy0 + cell_)});
      const double gap = std::sqrt(dx * dx + dy * dy) - slack;
      if (gap > out.back()) return;
    }
    const std::size_t cell = static_cast<std::size_t>(r) * cols_ + static_cast<std::size_t>(c);
    for (std::size_t s = cell_start_[cell]; s < cell_start_[cell + 1]; ++s) {
      if (ids_[s] == exclude) continue;
      insert_sorted(out, k, euclidean_distance(q, Point{xs_[s], ys_[s]}));
    }
  };

  for (long long ring = 0;; ++ring) {
    if (ring == 0) {
      visit(qr, qc);
    } else {
      for (long long c = qc - ring; c <= qc + ring; ++c) {
        visit(qr - ring, c);
        visit(qr + ring, c);
      }
      for (long long r = qr - ring + 1; r <= qr + ring - 1; ++r) {
        visit(r, qc - ring);
        visit(r, qc + ring);
      }
    }

    // Lower bound on the distance to any point outside the visited block.
    double bound = std::numeric_limits<double>::infinity();
    if (qc - ring > 0) bound = std::min(bound, q.x - (x0_ + static_cast<double>(qc - ring) * cell_));
    if (qc + ring < cols - 1)
      bound = std::min(bound, (x0_ + static_cast<double>(qc + ring + 1) * cell_) - q.x);
    if (qr - ring > 0) bound = std::min(bound, q.y - (y0_ + static_cast<double>(qr - ring) * cell_));
    if (qr + ring < rows - 1)
      bound = std::min(bound, (y0_ + static_cast<double>(qr + ring + 1) * cell_) - q.y);
    if (std::isinf(bound)) break;  // whole grid visited
    if (out.size() == k && out.back() <= bound - slack) break;
  }
}

double GridIndex::nearest(Point q, std::size_t exclude) const {
  const std::size_t eligible =
      size() - ((exclude != kNoExclude && exclude < size()) ? 1 : 0);
  if (eligible == 0) return std::numeric_limits<double>::infinity();
  thread_local std::vector<double> scratch;
  k_nearest(q, 1, exclude, scratch);
  return scratch.front();
}

}  // namespace palmpat

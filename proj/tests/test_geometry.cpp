#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "palmpat/geometry.hpp"
#include "palmpat/spatial_index.hpp"

using namespace palmpat;

TEST_CASE("euclidean distance") {
  CHECK(euclidean_distance({0, 0}, {3, 4}) == 5.0);
  CHECK(euclidean_distance({1, 1}, {1, 1}) == 0.0);
  CHECK(euclidean_distance({0, 0}, {1, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(euclidean_distance({2, -7}, {-1, 5}) == euclidean_distance({-1, 5}, {2, -7}));
}

TEST_CASE("distance is translation and rotation invariant") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-500.0, 500.0);
  for (int t = 0; t < 200; ++t) {
    const Point a{u(gen), u(gen)}, b{u(gen), u(gen)};
    const double theta = u(gen) / 100.0;
    const double c = std::cos(theta), s = std::sin(theta);
    const Point shift{u(gen), u(gen)};
    auto move = [&](Point p) { return Point{c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y}; };
    const double d0 = euclidean_distance(a, b);
    CHECK(std::abs(euclidean_distance(move(a), move(b)) - d0) <= 1e-9 * std::max(1.0, d0));
  }
}

TEST_CASE("iou") {
  const Box a{0, 0, 2, 2, 0.9};
  CHECK(iou(a, a) == 1.0);
  CHECK(iou({0, 0, 1, 1}, {2, 2, 3, 3}) == 0.0);
  CHECK(iou({0, 0, 2, 2}, {1, 1, 3, 3}) == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  // touching edges: zero-area intersection
  CHECK(iou({0, 0, 1, 1}, {1, 0, 2, 1}) == 0.0);

  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int t = 0; t < 500; ++t) {
    const double x = u(gen), y = u(gen);
    const Box p{x, y, x + 1 + u(gen), y + 1 + u(gen)};
    const double x2 = u(gen), y2 = u(gen);
    const Box q{x2, y2, x2 + 1 + u(gen), y2 + 1 + u(gen)};
    CHECK(iou(p, q) == iou(q, p));
    CHECK(iou(p, q) >= 0.0);
    CHECK(iou(p, q) <= 1.0);
    CHECK(iou(p, p) == 1.0);
  }
}

TEST_CASE("window and pattern validation") {
  CHECK_THROWS_AS(validate(Window{0, 0, 0, 1}), InvalidInput);
  CHECK_THROWS_AS(validate(Window{0, 0, 1, -1}), InvalidInput);
  CHECK_NOTHROW(PointPattern(Window{0, 0, 1, 1}, {{0, 0}, {1, 1}, {0.5, 1}}));  // boundary inside
  CHECK_THROWS_AS(PointPattern(Window{0, 0, 1, 1}, {{1.0000001, 0.5}}), InvalidInput);
  CHECK_THROWS_AS(PointPattern(Window{0, 0, 1, 1}, {{NAN, 0.5}}), InvalidInput);
  CHECK_THROWS_AS(validate(Box{0, 0, 1, 1, 1.5}), InvalidInput);
  CHECK_THROWS_AS(validate(Box{1, 0, 1, 1, 0.5}), InvalidInput);
}

TEST_CASE("nearest neighbor distances: hand cases") {
  const PointPattern line(Window{-1, -1, 4, 1}, {{0, 0}, {1, 0}, {3, 0}});
  const auto d = nearest_neighbor_distances(line, 1);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == std::vector<double>{1});
  CHECK(d[1] == std::vector<double>{1});
  CHECK(d[2] == std::vector<double>{2});

  const PointPattern two(Window{0, 0, 10, 10}, {{0, 0}, {3, 4}});
  const auto d2 = nearest_neighbor_distances(two, 1);
  CHECK(d2[0][0] == 5.0);
  CHECK(d2[1][0] == 5.0);

  const auto full = nearest_neighbor_distances(line, 2);
  CHECK(full[0] == std::vector<double>{1, 3});
  CHECK(full[2] == std::vector<double>{2, 3});
}

TEST_CASE("nearest neighbor distances: errors") {
  const PointPattern one(Window{0, 0, 1, 1}, {{0.5, 0.5}});
  CHECK_THROWS_AS(nearest_neighbor_distances(one, 1), InvalidInput);
  const PointPattern two(Window{0, 0, 1, 1}, {{0.5, 0.5}, {0.1, 0.1}});
  CHECK_THROWS_AS(nearest_neighbor_distances(two, 2), InvalidInput);
  CHECK_THROWS_AS(nearest_neighbor_distances(two, 0), InvalidInput);
}

TEST_CASE("grid index equals brute force exactly") {
  std::mt19937_64 gen(2024);
  const std::vector<std::size_t> sizes{2, 3, 10, 200, 1000};
  for (std::size_t n : sizes) {
    for (int rep = 0; rep < 3; ++rep) {
      auto pts = oracle::uniform_points(gen, n, 100.0);
      if (rep == 1) {
        // heavy clustering plus exact duplicates
        for (std::size_t i = 0; i < n; ++i) pts[i] = {50.0 + pts[i].x * 1e-3, 50.0 + pts[i].y * 1e-3};
        if (n > 3) pts[n - 1] = pts[0];
      }
      if (rep == 2) {
        for (auto& p : pts) p.y = 7.0;  // collinear: zero-height bounding box
      }
      const PointPattern pattern(Window{0, 0, 100, 100}, pts);
      const std::size_t k = std::min<std::size_t>(5, n - 1);
      CAPTURE(n);
      CAPTURE(rep);
      CHECK(nearest_neighbor_distances(pattern, k) == oracle::knn(pts, k));
    }
  }
}

TEST_CASE("grid index queries from outside the indexed extent") {
  std::mt19937_64 gen(3);
  const auto pts = oracle::uniform_points(gen, 300, 10.0);
  const GridIndex index(pts);
  std::uniform_real_distribution<double> u(-50.0, 60.0);
  for (int t = 0; t < 500; ++t) {
    const Point q{u(gen), u(gen)};
    double best = INFINITY;
    for (const Point& p : pts) best = std::min(best, euclidean_distance(q, p));
    CHECK(index.nearest(q) == best);
  }
}

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "palmpat/envelope.hpp"
#include "palmpat/ripley.hpp"

using namespace palmpat;

namespace {

std::vector<double> dense(const RipleyCurve& c) { return c.dense(); }

}  // namespace

TEST_CASE("distance grid") {
  CHECK_THROWS_AS(DistanceGrid({}), InvalidInput);
  CHECK_THROWS_AS(DistanceGrid({1, 1}), InvalidInput);
  CHECK_THROWS_AS(DistanceGrid({-1, 1}), InvalidInput);
  const auto g = DistanceGrid::linspace(10.0, 11);
  CHECK(g.size() == 11);
  CHECK(g[0] == 0.0);
  CHECK(g[10] == 10.0);
  CHECK(g[5] == 5.0);
  const auto def = DistanceGrid::default_for(Window{0, 0, 300, 200});
  CHECK(def.size() == 100);
  CHECK(def[99] == 100.0);
}

TEST_CASE("G function: strict inequality") {
  const PointPattern two(Window{0, 0, 10, 10}, {{0, 0}, {3, 4}});
  CHECK(dense(g_function(two, DistanceGrid({3, 5, 6}))) == std::vector<double>{0, 0, 1});

  const PointPattern line(Window{0, -1, 3, 1}, {{0, 0}, {1, 0}, {3, 0}});
  const auto g = dense(g_function(line, DistanceGrid({1.5})));
  CHECK(g[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const PointPattern one(Window{0, 0, 1, 1}, {{0.5, 0.5}});
  CHECK_THROWS_AS(g_function(one, DistanceGrid({1})), InvalidInput);
}

TEST_CASE("G function matches the all-pairs oracle") {
  std::mt19937_64 gen(100);
  for (int t = 0; t < 20; ++t) {
    const auto pts = oracle::uniform_points(gen, 100, 50.0);
    const auto grid = DistanceGrid::linspace(10.0, 60);
    const PointPattern pattern(Window{0, 0, 50, 50}, pts);
    CHECK(dense(g_function(pattern, grid)) == oracle::g_curve(pts, grid.values()));
  }
}

TEST_CASE("F function") {
  const Window w{0, 0, 10, 10};
  const PointPattern center(w, {{5, 5}});
  const DistanceGrid grid({0.0, 1.0, 3.0, w.diagonal() + 1.0});
  const auto f = dense(f_function(center, grid, 100000, 77));
  CHECK(f[0] == 0.0);
  CHECK(f[3] == 1.0);

  // same reference stream, indicator sum evaluated directly
  const auto refs = reference_points(w, 100000, 77);
  const std::vector<Point> observed(center.points().begin(), center.points().end());
  CHECK(f == oracle::f_curve(observed, refs, grid.values()));
  // the area fraction of a radius-3 disk in the window is pi*9/100
  CHECK(f[2] == doctest::Approx(std::numbers::pi * 9.0 / 100.0).epsilon(0.02));

  const PointPattern empty(w, {});
  CHECK_THROWS_AS(f_function(empty, grid, 10, 1), InvalidInput);
  CHECK_THROWS_AS(f_function(center, grid, 0, 1), InvalidInput);
}

TEST_CASE("F function is reproducible and worker-count invariant") {
  std::mt19937_64 gen(9);
  const PointPattern pattern(Window{0, 0, 100, 100}, oracle::uniform_points(gen, 300, 100.0));
  const auto grid = DistanceGrid::default_for(pattern.window());
  const auto a = f_function(pattern, grid, 5000, 123, 1);
  const auto b = f_function(pattern, grid, 5000, 123, 4);
  const auto c = f_function(pattern, grid, 5000, 123, 16);
  CHECK(a.values == b.values);
  CHECK(a.values == c.values);
  CHECK(a.values != f_function(pattern, grid, 5000, 124, 1).values);
}

TEST_CASE("J function") {
  const DistanceGrid grid({1, 2, 3});
  const RipleyCurve g{grid, {0.5, 1.0, 0.2}};
  const RipleyCurve f{grid, {0.25, 0.5, 1.0}};
  const auto j = j_function(g, f);
  CHECK(*j.values[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(*j.values[1] == 0.0);
  CHECK_FALSE(j.values[2].has_value());
  CHECK_FALSE(j.fully_defined());
  CHECK_THROWS_AS(j.dense(), InvalidInput);

  const auto ones = j_function(f, f);
  CHECK(*ones.values[0] == 1.0);
  CHECK(*ones.values[1] == 1.0);

  const RipleyCurve other{DistanceGrid({1, 2, 4}), {0, 0, 0}};
  CHECK_THROWS_AS(j_function(g, other), InvalidInput);
}

TEST_CASE("G and F are bounded, nondecreasing, and G reaches 1") {
  std::mt19937_64 gen(31);
  for (int t = 0; t < 30; ++t) {
    std::uniform_int_distribution<std::size_t> nd(2, 400);
    const auto pts = oracle::uniform_points(gen, nd(gen), 20.0);
    const PointPattern pattern(Window{0, 0, 20, 20}, pts);
    const auto grid = DistanceGrid::linspace(12.0, 50);
    for (const auto& curve : {dense(g_function(pattern, grid)),
                              dense(f_function(pattern, grid, 500, t))}) {
      for (std::size_t i = 0; i < curve.size(); ++i) {
        CHECK(curve[i] >= 0.0);
        CHECK(curve[i] <= 1.0);
        if (i > 0) CHECK(curve[i] >= curve[i - 1]);
      }
    }
    const auto nn = nearest_neighbor_distance(pattern);
    const double beyond = *std::max_element(nn.begin(), nn.end()) * 1.0001 + 1e-12;
    CHECK(dense(g_function(pattern, DistanceGrid({beyond})))[0] == 1.0);
  }
}

TEST_CASE("nn_stats") {
  const PointPattern line(Window{0, -1, 3, 1}, {{0, 0}, {1, 0}, {3, 0}});
  const auto s = nn_stats(line, 1, 4);
  CHECK(s.mean == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(s.median == 1.0);
  CHECK(s.std == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
  std::size_t total = 0;
  for (auto c : s.histogram.counts) total += c;
  CHECK(total == 3);

  const PointPattern two(Window{0, 0, 10, 10}, {{0, 0}, {3, 4}});
  const auto t = nn_stats(two, 1, 3);
  CHECK(t.mean == 5.0);
  CHECK(t.std == 0.0);
  CHECK(t.histogram.counts.size() == 3);

  CHECK_THROWS_AS(nn_stats(two, 2, 3), InvalidInput);
}

TEST_CASE("nn_stats matches the all-pairs oracle") {
  std::mt19937_64 gen(500);
  const auto pts = oracle::uniform_points(gen, 500, 100.0);
  const PointPattern pattern(Window{0, 0, 100, 100}, pts);
  const auto s = nn_stats(pattern, 5, 20);
  const auto knn = oracle::knn(pts, 5);
  std::vector<double> per;
  for (const auto& row : knn) per.push_back((row[0] + row[1] + row[2] + row[3] + row[4]) / 5.0);
  double m = 0;
  for (double v : per) m += v;
  m /= per.size();
  double ss = 0;
  for (double v : per) ss += (v - m) * (v - m);
  auto sorted = per;
  std::sort(sorted.begin(), sorted.end());
  CHECK(oracle::rel_close(s.mean, m));
  CHECK(oracle::rel_close(s.std, std::sqrt(ss / (per.size() - 1))));
  CHECK(oracle::rel_close(s.median, 0.5 * (sorted[249] + sorted[250])));
  CHECK(s.median >= s.min);
  CHECK(s.median <= s.max);
}

TEST_CASE("CSR J curve stays inside its envelope on average") {
  const Window w{0, 0, 1000, 1000};
  const auto grid = DistanceGrid::default_for(w);
  double coverage = 0.0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const PointPattern pattern = simulate_csr(w, 200, 1000 + t);
    coverage += envelope(pattern, grid, Statistic::J, 199, 7000 + t, 0, 0).band_coverage();
  }
  coverage /= trials;
  MESSAGE("mean J band coverage " << coverage);
  CHECK(coverage >= 0.90);
}

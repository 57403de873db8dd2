#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "palmpat/envelope.hpp"
#include "palmpat/random.hpp"
#include "palmpat/reproduction.hpp"

using namespace palmpat;

TEST_CASE("trapezoid rule") {
  const std::vector<double> x01{0, 1}, y01{0, 1};
  CHECK(trapezoid_integrate(x01, y01) == 0.5);
  const std::vector<double> x3{0, 1, 2}, y3{1, 1, 1};
  CHECK(trapezoid_integrate(x3, y3) == 2.0);

  std::vector<double> xs(1001), ys(1001);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = static_cast<double>(i) / 1000.0;
    ys[i] = xs[i] * xs[i];
  }
  // error bound (b-a) h^2 max|f''| / 12 = 1e-6 / 6
  CHECK(std::abs(trapezoid_integrate(xs, ys) - 1.0 / 3.0) < 1e-6);

  const std::vector<double> bad_x{0, 1, 1}, three{1, 2, 3};
  CHECK_THROWS_AS(trapezoid_integrate(bad_x, three), InvalidInput);
  CHECK_THROWS_AS(trapezoid_integrate(x01, three), InvalidInput);
  const std::vector<double> single{0};
  CHECK_THROWS_AS(trapezoid_integrate(single, single), InvalidInput);
}

TEST_CASE("reproduction parameters are validated") {
  const Window w{0, 0, 10, 10};
  CHECK_THROWS_AS(simulate_reproduction(w, 5, {1.5, 1.0}, 1), InvalidInput);
  CHECK_THROWS_AS(simulate_reproduction(w, 5, {0.5, 0.0}, 1), InvalidInput);
  CHECK_THROWS_AS(simulate_reproduction(w, 0, {0.5, 1.0}, 1), InvalidInput);
}

TEST_CASE("simulation postconditions") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  std::uniform_real_distribution<double> us(0.1, 200.0);
  const Window w{-20, 5, 180, 105};
  for (int t = 0; t < 50; ++t) {
    const ReproductionParams params{up(gen), us(gen)};
    const std::size_t n = 1 + static_cast<std::size_t>(up(gen) * 300);
    const auto pattern = simulate_reproduction(w, n, params, t);
    CHECK(pattern.size() == n);
    for (const Point& p : pattern.points()) CHECK(w.contains(p));
    CHECK(pattern == simulate_reproduction(w, n, params, t));
  }
}

TEST_CASE("tiny sigma with p = 1 collapses onto the first point") {
  const auto pattern = simulate_reproduction(Window{0, 0, 1000, 1000}, 100, {1.0, 1e-9}, 2024);
  double max_d = 0.0;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    for (std::size_t j = i + 1; j < pattern.size(); ++j) {
      max_d = std::max(max_d, euclidean_distance(pattern[i], pattern[j]));
    }
  }
  CHECK(max_d < 1e-6);
}

TEST_CASE("offspring that cannot land inside fall back to uniform") {
  // sigma vastly larger than the window: almost every Gaussian draw misses
  const auto out = simulate_reproduction_traced(Window{0, 0, 1, 1}, 20, {1.0, 1e6}, 4);
  CHECK(out.pattern.size() == 20);
  CHECK(out.uniform_fallbacks > 0);
}

TEST_CASE("p = 0 is indistinguishable from CSR on G") {
  const Window w{0, 0, 500, 500};
  const auto grid = DistanceGrid::linspace(60.0, 30);
  const int seeds = 100;
  std::vector<double> s1(grid.size()), s2(grid.size()), q1(grid.size()), q2(grid.size());
  for (int s = 0; s < seeds; ++s) {
    const auto a = g_function(simulate_reproduction(w, 200, {0.0, 10.0}, s), grid).dense();
    const auto b = g_function(simulate_csr(w, 200, 10000 + s), grid).dense();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      s1[i] += a[i];
      q1[i] += a[i] * a[i];
      s2[i] += b[i];
      q2[i] += b[i] * b[i];
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double m1 = s1[i] / seeds, m2 = s2[i] / seeds;
    const double v1 = q1[i] / seeds - m1 * m1, v2 = q2[i] / seeds - m2 * m2;
    const double se = std::sqrt((v1 + v2) / seeds);
    CHECK(std::abs(m1 - m2) <= 5.0 * se + 1e-12);
  }
}

TEST_CASE("p = 0 patterns rarely reject CSR") {
  const Window w{0, 0, 1000, 1000};
  const auto grid = DistanceGrid::default_for(w);
  int rejections = 0;
  for (int t = 0; t < 100; ++t) {
    const auto pattern = simulate_reproduction(w, 200, {0.0, 10.0}, 300 + t);
    if (envelope(pattern, grid, Statistic::G, 199, 900 + t, 0, 0).rejects_csr(0.05)) ++rejections;
  }
  MESSAGE("rejections at 5%: " << rejections);
  CHECK(rejections <= 10);
}

TEST_CASE("discrepancy") {
  const Window w{0, 0, 100, 100};
  const auto grid = DistanceGrid::default_for(w);
  const auto observed = simulate_reproduction(w, 300, {0.5, 5.0}, 1);
  const auto g = g_function(observed, grid);
  const auto f = f_function(observed, grid, 1000, 55);
  CHECK(discrepancy(g, f, observed, grid, 1000, 55) == 0.0);

  const DistanceGrid ten = DistanceGrid::linspace(10.0, 11);
  RipleyCurve g0{ten, {}}, g1{ten, {}}, f0{ten, {}};
  for (std::size_t i = 0; i < ten.size(); ++i) {
    g0.values.emplace_back(0.2);
    g1.values.emplace_back(0.3);
    f0.values.emplace_back(0.5);
  }
  CHECK(curve_discrepancy(g0, f0, g1, f0) == doctest::Approx(1.0).epsilon(1e-12));

  // stepwise recomposition from the oracles
  const auto other = simulate_reproduction(w, 300, {0.2, 9.0}, 2);
  const std::vector<Point> obs_pts(observed.points().begin(), observed.points().end());
  const std::vector<Point> sim_pts(other.points().begin(), other.points().end());
  const auto og = oracle::g_curve(obs_pts, grid.values());
  const auto sg = oracle::g_curve(sim_pts, grid.values());
  const auto of = oracle::f_curve(obs_pts, reference_points(w, 1000, 55), grid.values());
  const auto sf = oracle::f_curve(sim_pts, reference_points(w, 1000, 66), grid.values());
  std::vector<double> dg, df;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    dg.push_back(std::abs(og[i] - sg[i]));
    df.push_back(std::abs(of[i] - sf[i]));
  }
  const double expected = trapezoid_integrate(grid.values(), dg) + trapezoid_integrate(grid.values(), df);
  const double got = discrepancy(g, f, other, grid, 1000, 66);
  CHECK(got > 0.0);
  CHECK(oracle::rel_close(got, expected));

  CHECK_THROWS_AS(discrepancy(g, f, other, ten, 1000, 66), InvalidInput);
}

TEST_CASE("fit table structure and degenerate grid") {
  const Window w{0, 0, 200, 200};
  const auto observed = simulate_reproduction(w, 150, {0.5, 8.0}, 10);
  const auto grid = DistanceGrid::default_for(w);
  const std::vector<double> ps{0.2, 0.5, 0.8}, sigmas{4.0, 8.0};
  FitOptions opts;
  opts.n_trials = 3;
  opts.seed = 17;
  const auto r = fit(observed, ps, sigmas, grid, opts);
  REQUIRE(r.table.size() == 6);
  double min_total = INFINITY;
  for (std::size_t i = 0; i < r.table.size(); ++i) {
    const auto& row = r.table[i];
    CHECK(row.params.p == ps[i / 2]);
    CHECK(row.params.sigma == sigmas[i % 2]);
    REQUIRE(row.trials.size() == 3);
    CHECK(row.total == row.trials[0] + row.trials[1] + row.trials[2]);
    for (double d : row.trials) CHECK(d >= 0.0);
    min_total = std::min(min_total, row.total);
  }
  CHECK(r.d_min == min_total);
  for (const auto& row : r.table) {
    if (row.total == r.d_min) {
      CHECK(row.params == r.best);  // first row achieving the minimum
      break;
    }
  }

  const std::vector<double> one_p{0.3}, one_s{5.0};
  const auto single = fit(observed, one_p, one_s, grid, opts);
  CHECK(single.best == ReproductionParams{0.3, 5.0});

  const std::vector<double> none;
  CHECK_THROWS_AS(fit(observed, none, sigmas, grid, opts), InvalidInput);
  CHECK_THROWS_AS(fit(observed, ps, none, grid, opts), InvalidInput);
}

TEST_CASE("fit is bitwise reproducible across worker counts") {
  const Window w{0, 0, 300, 300};
  const auto observed = simulate_reproduction(w, 200, {0.5, 10.0}, 3);
  const auto grid = DistanceGrid::default_for(w);
  const std::vector<double> ps{0.3, 0.6}, sigmas{5.0, 10.0, 20.0};
  FitOptions opts;
  opts.n_trials = 4;
  opts.seed = 99;
  opts.workers = 1;
  const auto a = fit(observed, ps, sigmas, grid, opts);
  opts.workers = 4;
  const auto b = fit(observed, ps, sigmas, grid, opts);
  opts.workers = 16;
  const auto c = fit(observed, ps, sigmas, grid, opts);
  for (std::size_t i = 0; i < a.table.size(); ++i) {
    CHECK(a.table[i].trials == b.table[i].trials);
    CHECK(a.table[i].trials == c.table[i].trials);
  }
  CHECK(a.best == c.best);
  CHECK(a.d_min == b.d_min);
}

TEST_CASE("CSR observations favor the smallest clustering probability") {
  const Window w{0, 0, 1000, 1000};
  const auto grid = DistanceGrid::default_for(w);
  const std::vector<double> ps{0.1, 0.4, 0.7}, sigmas{10.0, 30.0};
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto observed = simulate_reproduction(w, 400, {0.0, 10.0}, 70 + s);
    FitOptions opts;
    opts.seed = 500 + s;
    const auto r = fit(observed, ps, sigmas, grid, opts);
    CHECK(r.best.p == 0.1);
  }
}

#include "palmpat/reproduction.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "palmpat/parallel.hpp"
#include "palmpat/random.hpp"

namespace palmpat {

void validate(const ReproductionParams& params) {
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
  if (!(params.sigma > 0.0) || !std::isfinite(params.sigma)) {
    throw InvalidInput("sigma must be positive and finite");
  }
}

SimulationOutcome simulate_reproduction_traced(const Window& window, std::size_t n,
                                               const ReproductionParams& params,
                                               std::uint64_t seed) {
  validate(window);
  validate(params);
  if (n < 1) throw InvalidInput("simulation needs n >= 1");

  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  pts.push_back(rng.uniform_point(window));
  std::size_t fallbacks = 0;

  while (pts.size() < n) {
    const Point parent = pts[rng.index(pts.size())];
    const double p_r = rng.uniform01();
    if (p_r < params.p) {
      bool placed = false;
      for (std::size_t attempt = 0; attempt < kMaxGaussianAttempts; ++attempt) {
        const auto [zx, zy] = rng.normal_pair();
        const Point child{parent.x + params.sigma * zx, parent.y + params.sigma * zy};
        if (window.contains(child)) {
          pts.push_back(child);
          placed = true;
          break;
        }
      }
      if (!placed) {
        ++fallbacks;
        pts.push_back(rng.uniform_point(window));
      }
    } else {
      pts.push_back(rng.uniform_point(window));
    }
  }
  return {PointPattern(window, std::move(pts)), fallbacks};
}

PointPattern simulate_reproduction(const Window& window, std::size_t n,
                                   const ReproductionParams& params, std::uint64_t seed) {
  return simulate_reproduction_traced(window, n, params, seed).pattern;
}

double trapezoid_integrate(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidInput("trapezoid: xs and ys differ in length");
  if (xs.size() < 2) throw InvalidInput("trapezoid: need at least 2 samples");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw InvalidInput("trapezoid: xs must be strictly increasing (index " +
                         std::to_string(i) + ")");
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    total += (xs[i + 1] - xs[i]) * (ys[i] + ys[i + 1]) / 2.0;
  }
  return total;
}

double curve_discrepancy(const RipleyCurve& observed_g, const RipleyCurve& observed_f,
                         const RipleyCurve& simulated_g, const RipleyCurve& simulated_f) {
  const DistanceGrid& grid = observed_g.grid;
  if (!(observed_f.grid == grid) || !(simulated_g.grid == grid) || !(simulated_f.grid == grid)) {
    throw InvalidInput("discrepancy: all curves must share one grid");
  }
  const auto g = observed_g.dense();
  const auto f = observed_f.dense();
  const auto gs = simulated_g.dense();
  const auto fs = simulated_f.dense();
  std::vector<double> dg(g.size()), df(f.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    dg[i] = std::abs(g[i] - gs[i]);
    df[i] = std::abs(f[i] - fs[i]);
  }
  return trapezoid_integrate(grid.values(), dg) + trapezoid_integrate(grid.values(), df);
}

double discrepancy(const RipleyCurve& observed_g, const RipleyCurve& observed_f,
                   const PointPattern& simulated, const DistanceGrid& grid, std::size_t n_ref,
                   std::uint64_t seed) {
  if (!(observed_g.grid == grid) || !(observed_f.grid == grid)) {
    throw InvalidInput("discrepancy: observed curves must use the given grid");
  }
  const RipleyCurve gs = g_function(simulated, grid);
  const RipleyCurve fs = f_function(simulated, grid, n_ref, seed, 1);
  return curve_discrepancy(observed_g, observed_f, gs, fs);
}

FitResult fit(const PointPattern& observed, std::span<const double> p_candidates,
              std::span<const double> sigma_candidates, const DistanceGrid& grid,
              const FitOptions& options) {
  if (p_candidates.empty()) throw InvalidInput("fit: p candidate list is empty");
  if (sigma_candidates.empty()) throw InvalidInput("fit: sigma candidate list is empty");
  if (options.n_trials < 1) throw InvalidInput("fit: n_trials must be >= 1");
  if (observed.size() < 2) throw InvalidInput("fit: observed pattern needs at least 2 points");
  for (double p : p_candidates) validate(ReproductionParams{p, 1.0});
  for (double s : sigma_candidates) validate(ReproductionParams{0.0, s});

  const std::size_t n_ref =
      options.n_ref == 0 ? default_reference_count(observed.size()) : options.n_ref;
  const std::uint64_t seed = options.seed;
  const RipleyCurve g = g_function(observed, grid);
  const RipleyCurve f =
      f_function(observed, grid, n_ref, derive_seed(seed, {stream::kObserved}), options.workers);

  const std::size_t n_sigma = sigma_candidates.size();
  const std::size_t n_trials = options.n_trials;
  const std::size_t rows = p_candidates.size() * n_sigma;

  FitResult result;
  result.table.resize(rows);
  for (std::size_t i = 0; i < p_candidates.size(); ++i) {
    for (std::size_t j = 0; j < n_sigma; ++j) {
      FitRow& row = result.table[i * n_sigma + j];
      row.params = {p_candidates[i], sigma_candidates[j]};
      row.trials.assign(n_trials, 0.0);
    }
  }

  std::vector<std::size_t> fallbacks(rows * n_trials, 0);
  parallel_for(rows * n_trials, options.workers, [&](std::size_t task) {
    const std::size_t row = task / n_trials;
    const std::size_t trial = task % n_trials;
    const std::uint64_t i = row / n_sigma;
    const std::uint64_t j = row % n_sigma;
    const ReproductionParams& params = result.table[row].params;
    SimulationOutcome sim = simulate_reproduction_traced(
        observed.window(), observed.size(), params,
        derive_seed(seed, {stream::kSimulation, i, j, trial}));
    fallbacks[task] = sim.uniform_fallbacks;
    result.table[row].trials[trial] =
        discrepancy(g, f, sim.pattern, grid, n_ref, derive_seed(seed, {stream::kReference, i, j, trial}));
  });

  double d_min = std::numeric_limits<double>::infinity();
  for (FitRow& row : result.table) {
    double d = 0.0;
    for (double di : row.trials) d += di;
    row.total = d;
    if (d < d_min) {
      d_min = d;
      result.best = row.params;
    }
  }
  result.d_min = d_min;
  for (std::size_t c : fallbacks) result.uniform_fallbacks += c;
  return result;
}

}  // namespace palmpat

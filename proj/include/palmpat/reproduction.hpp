// ============================================================================
// reproduction.hpp -- Poisson-Gaussian reproduction simulator and grid-search fit
//
// Simulation starts from one uniform point. Each further point picks a parent
// uniformly from the points placed so far and draws p_r ~ U[0,1): if p_r < p
// the offspring is N(parent, sigma^2 I), otherwise uniform over the window.
// So p is the probability of the local (clustering) branch.
//
// Fitting compares observed and simulated G and F curves by the trapezoid
// integral of their absolute differences, summed over n_trials simulations
// per (p, sigma) candidate, and keeps the first strict minimum in scan order
// (p outer, sigma inner).
// ============================================================================
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "palmpat/geometry.hpp"
#include "palmpat/ripley.hpp"

namespace palmpat {

struct ReproductionParams {
  double p = 0.5;
  double sigma = 1.0;

  friend bool operator==(const ReproductionParams&, const ReproductionParams&) = default;
};

void validate(const ReproductionParams& params);

/// Gaussian offspring outside the window are redrawn up to this many times
/// before a uniform draw is used instead.
inline constexpr std::size_t kMaxGaussianAttempts = 1000;
inline constexpr std::size_t kDefaultTrials = 10;

struct SimulationOutcome {
  PointPattern pattern;
  std::size_t uniform_fallbacks = 0;  // Gaussian draws that hit the attempt cap
};

SimulationOutcome simulate_reproduction_traced(const Window& window, std::size_t n,
                                               const ReproductionParams& params,
                                               std::uint64_t seed);

PointPattern simulate_reproduction(const Window& window, std::size_t n,
                                   const ReproductionParams& params, std::uint64_t seed);

/// Composite trapezoid rule over strictly increasing abscissae.
double trapezoid_integrate(std::span<const double> xs, std::span<const double> ys);

/// Integrated |g - g_s| + |f - f_s| for one simulated pattern. g_s and f_s
/// are computed on `simulated` with the given grid, n_ref and seed.
double discrepancy(const RipleyCurve& observed_g, const RipleyCurve& observed_f,
                   const PointPattern& simulated, const DistanceGrid& grid, std::size_t n_ref,
                   std::uint64_t seed);

/// Same integral for precomputed simulated curves.
double curve_discrepancy(const RipleyCurve& observed_g, const RipleyCurve& observed_f,
                         const RipleyCurve& simulated_g, const RipleyCurve& simulated_f);

struct FitRow {
  ReproductionParams params;
  double total = 0.0;            // sum of trials, in trial order
  std::vector<double> trials;    // per-trial discrepancies d_i
};

struct FitResult {
  ReproductionParams best;
  double d_min = 0.0;
  std::vector<FitRow> table;     // p outer, sigma inner
  std::size_t uniform_fallbacks = 0;
};

struct FitOptions {
  std::size_t n_trials = kDefaultTrials;
  std::size_t n_ref = 0;         // 0: default_reference_count(observed size)
  std::uint64_t seed = 0;
  std::size_t workers = 0;       // 0: auto
};

/// Grid search over every (p, sigma) pair. Observed F uses the stream
/// derive_seed(seed, {kObserved}); trial t of pair (i, j) uses
/// derive_seed(seed, {kSimulation, i, j, t}) for the pattern and
/// derive_seed(seed, {kReference, i, j, t}) for its F reference points.
FitResult fit(const PointPattern& observed, std::span<const double> p_candidates,
              std::span<const double> sigma_candidates, const DistanceGrid& grid,
              const FitOptions& options);

}  // namespace palmpat

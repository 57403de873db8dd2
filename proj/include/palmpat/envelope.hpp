// ============================================================================
// envelope.hpp -- Monte Carlo envelopes against complete spatial randomness
//
// The null model is the binomial process: the observed point count placed
// uniformly in the observed window. For each grid distance the result holds
// the simulation mean, a 2.5%/97.5% quantile band, and a two-sided rank
// p-value
//
//     p(d) = (1 + #{sims with |s(d) - mean(d)| >= |obs(d) - mean(d)|}) / (m + 1).
//
// A single whole-curve decision is provided by a rank test on the maximum
// deviation |s(d) - mean(d)| / sd(d) over the grid, using the same
// simulations (see rejects_csr).
// ============================================================================
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "palmpat/geometry.hpp"
#include "palmpat/ripley.hpp"

namespace palmpat {

enum class Statistic { G, F, J };

std::string_view to_string(Statistic s);
/// Accepts "g", "f", "j" in either case.
Statistic parse_statistic(std::string_view text);

inline constexpr std::size_t kMinEnvelopeSimulations = 19;
inline constexpr std::size_t kDefaultEnvelopeSimulations = 199;

struct EnvelopeResult {
  DistanceGrid grid;
  std::size_t simulations = 0;
  std::vector<std::optional<double>> observed;
  std::vector<std::optional<double>> sim_mean;
  std::vector<std::optional<double>> lo95;
  std::vector<std::optional<double>> hi95;
  std::vector<std::optional<double>> p_values;
  /// Rank p-value of the maximum studentized deviation from the pooled mean,
  /// over grid points where every curve is defined.
  std::optional<double> global_p;

  /// Fraction of comparable grid points where observed lies inside the band.
  double band_coverage() const;
  /// Grid indices whose pointwise p-value is below alpha.
  std::vector<std::size_t> significant_points(double alpha) const;
  /// Whole-curve decision: global_p <= alpha.
  bool rejects_csr(double alpha) const;
};

/// n points uniform over the window (binomial process).
PointPattern simulate_csr(const Window& window, std::size_t n, std::uint64_t seed);

/// Computes one statistic for a pattern. n_ref and ref_seed are used by F and J.
RipleyCurve compute_statistic(const PointPattern& pattern, const DistanceGrid& grid,
                              Statistic statistic, std::size_t n_ref, std::uint64_t ref_seed,
                              std::size_t workers = 1);

/// Aggregates an observed curve against simulated curves on the same grid.
EnvelopeResult envelope_from_curves(const RipleyCurve& observed,
                                    std::span<const RipleyCurve> simulations);

/// Full envelope test: m CSR simulations matching the pattern's count and
/// window. n_ref = 0 selects default_reference_count. Deterministic given
/// the seed, for any worker count.
EnvelopeResult envelope(const PointPattern& pattern, const DistanceGrid& grid, Statistic statistic,
                        std::size_t m, std::uint64_t seed, std::size_t n_ref = 0,
                        std::size_t workers = 0);

}  // namespace palmpat

#include "palmpat/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "palmpat/parallel.hpp"
#include "palmpat/random.hpp"

namespace palmpat {

namespace {

// Linear-interpolation quantile of sorted data (Hyndman-Fan type 7).
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::G: return "g";
    case Statistic::F: return "f";
    case Statistic::J: return "j";
  }
  return "?";
}

Statistic parse_statistic(std::string_view text) {
  if (text == "g" || text == "G") return Statistic::G;
  if (text == "f" || text == "F") return Statistic::F;
  if (text == "j" || text == "J") return Statistic::J;
  throw InvalidInput("unknown statistic '" + std::string(text) + "' (expected g, f or j)");
}

double EnvelopeResult::band_coverage() const {
  std::size_t comparable = 0;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!observed[i] || !lo95[i] || !hi95[i]) continue;
    ++comparable;
    if (*observed[i] >= *lo95[i] && *observed[i] <= *hi95[i]) ++inside;
  }
  return comparable == 0 ? 1.0 : static_cast<double>(inside) / static_cast<double>(comparable);
}

std::vector<std::size_t> EnvelopeResult::significant_points(double alpha) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p_values.size(); ++i) {
    if (p_values[i] && *p_values[i] < alpha) out.push_back(i);
  }
  return out;
}

bool EnvelopeResult::rejects_csr(double alpha) const { return global_p && *global_p <= alpha; }

PointPattern simulate_csr(const Window& window, std::size_t n, std::uint64_t seed) {
  validate(window);
  if (n < 1) throw InvalidInput("CSR simulation needs n >= 1");
  Rng rng(seed);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = rng.uniform_point(window);
  return PointPattern(window, std::move(pts));
}

RipleyCurve compute_statistic(const PointPattern& pattern, const DistanceGrid& grid,
                              Statistic statistic, std::size_t n_ref, std::uint64_t ref_seed,
                              std::size_t workers) {
  switch (statistic) {
    case Statistic::G: return g_function(pattern, grid);
    case Statistic::F: return f_function(pattern, grid, n_ref, ref_seed, workers);
    case Statistic::J:
      return j_function(g_function(pattern, grid),
                        f_function(pattern, grid, n_ref, ref_seed, workers));
  }
  throw InvalidInput("unknown statistic");
}

EnvelopeResult envelope_from_curves(const RipleyCurve& observed,
                                    std::span<const RipleyCurve> simulations) {
  const std::size_t m = simulations.size();
  if (m < kMinEnvelopeSimulations) {
    throw InvalidInput("envelope needs at least " + std::to_string(kMinEnvelopeSimulations) +
                       " simulations, got " + std::to_string(m));
  }
  const std::size_t n = observed.grid.size();
  for (const auto& s : simulations) {
    if (!(s.grid == observed.grid) || s.values.size() != n) {
      throw InvalidInput("simulated curves must share the observed grid");
    }
  }
  if (observed.values.size() != n) throw InvalidInput("observed curve does not match its grid");

  EnvelopeResult r{observed.grid, m, observed.values, {}, {}, {}, {}, std::nullopt};
  r.sim_mean.assign(n, std::nullopt);
  r.lo95.assign(n, std::nullopt);
  r.hi95.assign(n, std::nullopt);
  r.p_values.assign(n, std::nullopt);

  std::vector<double> column;
  column.reserve(m);
  for (std::size_t i = 0; i < n; ++i) {
    column.clear();
    for (const auto& s : simulations) {
      if (s.values[i]) column.push_back(*s.values[i]);
    }
    if (column.empty()) continue;
    double sum = 0.0;
    for (double v : column) sum += v;
    const double mean = sum / static_cast<double>(column.size());
    r.sim_mean[i] = mean;

    if (observed.values[i]) {
      const double dev = std::abs(*observed.values[i] - mean);
      std::size_t as_extreme = 0;
      for (double v : column) {
        if (std::abs(v - mean) >= dev) ++as_extreme;
      }
      r.p_values[i] = static_cast<double>(1 + as_extreme) / static_cast<double>(1 + column.size());
    }

    std::sort(column.begin(), column.end());
    // Skewed columns (e.g. G near d = 0) can put the mean outside the raw
    // quantiles; the band is widened to contain it.
    r.lo95[i] = std::min(quantile_sorted(column, 0.025), mean);
    r.hi95[i] = std::max(quantile_sorted(column, 0.975), mean);
  }

  // Studentized maximum deviation over grid points where everything is
  // defined. Centre and scale come from all m + 1 curves so the observed curve
  // stays exchangeable with the simulations under the null. Scaling keeps
  // high-variance regions (J near F = 1) from masking departures elsewhere.
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < n; ++i) {
    bool ok = observed.values[i].has_value();
    for (const auto& s : simulations) ok = ok && s.values[i].has_value();
    if (ok) usable.push_back(i);
  }
  if (!usable.empty()) {
    std::vector<double> centre, spread;
    for (std::size_t i : usable) {
      double sum = *observed.values[i];
      for (const auto& s : simulations) sum += *s.values[i];
      const double c = sum / static_cast<double>(m + 1);
      double ss = (*observed.values[i] - c) * (*observed.values[i] - c);
      for (const auto& s : simulations) ss += (*s.values[i] - c) * (*s.values[i] - c);
      centre.push_back(c);
      spread.push_back(std::sqrt(ss / static_cast<double>(m)));
    }
    auto max_dev = [&](const std::vector<std::optional<double>>& v) {
      double t = 0.0;
      for (std::size_t u = 0; u < usable.size(); ++u) {
        if (spread[u] > 0.0) t = std::max(t, std::abs(*v[usable[u]] - centre[u]) / spread[u]);
      }
      return t;
    };
    const double t_obs = max_dev(observed.values);
    std::size_t as_extreme = 0;
    for (const auto& s : simulations) {
      if (max_dev(s.values) >= t_obs) ++as_extreme;
    }
    r.global_p = static_cast<double>(1 + as_extreme) / static_cast<double>(1 + m);
  }
  return r;
}

EnvelopeResult envelope(const PointPattern& pattern, const DistanceGrid& grid, Statistic statistic,
                        std::size_t m, std::uint64_t seed, std::size_t n_ref,
                        std::size_t workers) {
  if (m < kMinEnvelopeSimulations) {
    throw InvalidInput("envelope needs m >= " + std::to_string(kMinEnvelopeSimulations) +
                       ", got " + std::to_string(m));
  }
  if (statistic != Statistic::F && pattern.size() < 2) {
    throw InvalidInput("G and J envelopes need at least 2 points");
  }
  if (pattern.empty()) throw InvalidInput("envelope needs a nonempty pattern");
  if (n_ref == 0) n_ref = default_reference_count(pattern.size());

  const RipleyCurve observed = compute_statistic(pattern, grid, statistic, n_ref,
                                                 derive_seed(seed, {stream::kObserved}), workers);
  std::vector<RipleyCurve> sims(m, RipleyCurve{grid, {}});
  parallel_for(m, workers, [&](std::size_t i) {
    const PointPattern null_pattern = simulate_csr(
        pattern.window(), pattern.size(), derive_seed(seed, {stream::kCsr, i}));
    sims[i] = compute_statistic(null_pattern, grid, statistic, n_ref,
                                derive_seed(seed, {stream::kReference, i}), 1);
  });
  return envelope_from_curves(observed, sims);
}

}  // namespace palmpat

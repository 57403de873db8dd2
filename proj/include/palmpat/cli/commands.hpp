// ============================================================================
// commands.hpp -- `palmpat` subcommands
//
//   ripley    G/F/J curve of a point file             -> ripley_<stat>.csv
//   envelope  CSR envelope test of one statistic      -> envelope_<stat>.csv
//   simulate  Poisson-Gaussian reproduction pattern   -> simulated.csv
//   fit       grid search for (p, sigma)              -> fit_table.csv, fit_best.csv
//   merge     tile-to-global mapping + NMS            -> merged.csv, centers.csv
//   count     match detected to labeled centers       -> count_report.csv, matches.csv
//   nn-stats  k-nearest-neighbor distance summary     -> nn_summary.csv, nn_histogram.csv,
//                                                        nn_values.csv
//
// Exit codes: 0 success, 2 usage error, 3 data error. PALMPAT_THREADS caps
// the worker count (unset or 0 means one worker per hardware thread).
// ============================================================================
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace palmpat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

/// Seed used when --seed is omitted.
inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  double units_per_meter = 1.0;
  std::optional<double> grid_max;    // working units; auto = half the shorter window side
  std::size_t grid_steps = 100;
  std::size_t n_ref = 0;             // 0 = max(1000, n)
  std::size_t envelope_m = 199;
  std::size_t n_trials = 10;
  std::string p_candidates = "0.05:0.95:0.05";
  std::string sigma_candidates = "10:100:10";
  double iou_threshold = 0.5;
  double match_radius = 5.0;         // meters
  std::string out_dir = ".";
  bool svg = false;
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace palmpat::cli

#include "palmpat/cli/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>

#include "palmpat/cli/csv_io.hpp"
#include "palmpat/cli/ranges.hpp"
#include "palmpat/cli/svg.hpp"
#include "palmpat/detections.hpp"
#include "palmpat/envelope.hpp"
#include "palmpat/parallel.hpp"
#include "palmpat/reproduction.hpp"
#include "palmpat/ripley.hpp"

namespace palmpat::cli {

namespace {

struct Inputs {
  std::string points;
  std::string window;
  std::string stat = "g";
  // simulate
  std::size_t n = 0;
  double p = 0.5;
  double sigma = 1.0;
  // merge
  std::string detections;
  bool global = false;
  int patch_size = 800;
  int stride = 400;
  std::string origin = "0,0";
  // count
  std::string detected;
  std::string labeled;
  // nn-stats
  std::size_t k = 1;
  std::size_t bins = 20;
};

std::filesystem::path output_path(const RunConfig& cfg, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw DataError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  return std::filesystem::path(cfg.out_dir) / name;
}

void emit(const RunConfig& cfg, const std::string& name, const std::string& content,
          std::ostream& out) {
  const auto path = output_path(cfg, name);
  write_text_file(path.string(), content);
  out << "wrote " << path.string() << '\n';
}

std::optional<Window> scaled_window(const Inputs& in, const RunConfig& cfg) {
  if (in.window.empty()) return std::nullopt;
  Window w = parse_window(in.window);
  const double s = cfg.units_per_meter;
  return Window{w.x_min / s, w.y_min / s, w.x_max / s, w.y_max / s};
}

PointPattern load_pattern(const Inputs& in, const RunConfig& cfg, std::ostream& err) {
  if (!(cfg.units_per_meter > 0.0)) throw UsageError("--units-per-meter must be positive");
  return parse_points_csv(in.points, cfg.units_per_meter, scaled_window(in, cfg), err);
}

DistanceGrid make_grid(const RunConfig& cfg, const Window& window) {
  if (cfg.grid_steps < 2) throw UsageError("--grid-steps must be at least 2");
  const double max = cfg.grid_max ? *cfg.grid_max : window.shorter_side() / 2.0;
  if (!(max > 0.0)) throw UsageError("--grid-max must be positive");
  return DistanceGrid::linspace(max, cfg.grid_steps);
}

std::size_t reference_count(const RunConfig& cfg, const PointPattern& pattern) {
  return cfg.n_ref == 0 ? default_reference_count(pattern.size()) : cfg.n_ref;
}

int cmd_ripley(const Inputs& in, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Statistic stat = parse_statistic(in.stat);
  const PointPattern pattern = load_pattern(in, cfg, err);
  const DistanceGrid grid = make_grid(cfg, pattern.window());
  const RipleyCurve curve = compute_statistic(pattern, grid, stat, reference_count(cfg, pattern),
                                              cfg.seed, workers_from_env());
  const std::string name = "ripley_" + std::string(to_string(stat));
  emit(cfg, name + ".csv", curve_csv(curve), out);
  if (cfg.svg) {
    ChartSpec chart{name, "d", std::string(to_string(stat)) + "(d)", grid.values(),
                    {{"observed", "#d62728", curve.values, false}}, std::nullopt};
    emit(cfg, name + ".svg", line_chart_svg(chart), out);
  }
  return kExitOk;
}

int cmd_envelope(const Inputs& in, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Statistic stat = parse_statistic(in.stat);
  if (cfg.envelope_m < kMinEnvelopeSimulations) {
    throw UsageError("--sims must be at least " + std::to_string(kMinEnvelopeSimulations));
  }
  const PointPattern pattern = load_pattern(in, cfg, err);
  const DistanceGrid grid = make_grid(cfg, pattern.window());
  const EnvelopeResult r = envelope(pattern, grid, stat, cfg.envelope_m, cfg.seed,
                                    reference_count(cfg, pattern), workers_from_env());
  const std::string name = "envelope_" + std::string(to_string(stat));
  emit(cfg, name + ".csv", envelope_csv(r), out);
  if (cfg.svg) {
    ChartSpec chart{name, "d", std::string(to_string(stat)) + "(d)", grid.values(), {}, ChartBand{r.lo95, r.hi95}};
    chart.series.push_back({"CSR mean", "#000000", r.sim_mean, false});
    chart.series.push_back({"observed", "#d62728", r.observed, false});
    if (stat == Statistic::J) {
      chart.series.push_back(
          {"J = 1", "#555555", std::vector<std::optional<double>>(grid.size(), 1.0), true});
    }
    emit(cfg, name + ".svg", line_chart_svg(chart), out);
  }
  out << "simulations " << r.simulations << '\n'
      << "global_p " << format_number(r.global_p) << '\n'
      << "band_coverage " << format_number(r.band_coverage()) << '\n'
      << "points_p_below_0.01 " << r.significant_points(0.01).size() << '\n'
      << "points_p_below_0.05 " << r.significant_points(0.05).size() << '\n';
  return kExitOk;
}

int cmd_simulate(const Inputs& in, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::optional<Window> window = scaled_window(in, cfg);
  std::size_t n = in.n;
  if (!in.points.empty()) {
    const PointPattern pattern = load_pattern(in, cfg, err);
    if (!window) window = pattern.window();
    if (n == 0) n = pattern.size();
  }
  if (!window) throw UsageError("simulate needs --window or --points");
  if (n == 0) throw UsageError("simulate needs --n or --points");
  try {
    validate(ReproductionParams{in.p, in.sigma});
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  const SimulationOutcome sim =
      simulate_reproduction_traced(*window, n, {in.p, in.sigma}, cfg.seed);
  emit(cfg, "simulated.csv", points_csv(sim.pattern.points()), out);
  out << "uniform_fallbacks " << sim.uniform_fallbacks << '\n';
  return kExitOk;
}

int cmd_fit(const Inputs& in, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<double> ps = parse_value_list(cfg.p_candidates);
  const std::vector<double> sigmas = parse_value_list(cfg.sigma_candidates);
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--p candidates must lie in [0, 1]");
  }
  for (double s : sigmas) {
    if (!(s > 0.0)) throw UsageError("--sigma candidates must be positive");
  }
  if (cfg.n_trials < 1) throw UsageError("--trials must be at least 1");
  const PointPattern pattern = load_pattern(in, cfg, err);
  const DistanceGrid grid = make_grid(cfg, pattern.window());
  FitOptions opts;
  opts.n_trials = cfg.n_trials;
  opts.n_ref = cfg.n_ref;
  opts.seed = cfg.seed;
  opts.workers = workers_from_env();
  const FitResult r = fit(pattern, ps, sigmas, grid, opts);
  emit(cfg, "fit_table.csv", fit_table_csv(r), out);
  emit(cfg, "fit_best.csv", fit_best_csv(r), out);
  out << "best p=" << format_number(r.best.p) << " sigma=" << format_number(r.best.sigma)
      << " d_min=" << format_number(r.d_min) << '\n';
  if (r.uniform_fallbacks > 0) {
    err << "notice: " << r.uniform_fallbacks << " Gaussian draws fell back to uniform\n";
  }
  return kExitOk;
}

int cmd_merge(const Inputs& in, const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (!(cfg.iou_threshold > 0.0 && cfg.iou_threshold <= 1.0)) {
    throw UsageError("--iou must lie in (0, 1]");
  }
  std::optional<TileLayout> layout;
  if (!in.global) {
    layout = TileLayout{in.patch_size, in.stride, parse_point(in.origin)};
    try {
      validate(*layout);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
  }
  const DetectionSet set = read_detections_csv(in.detections, in.global, layout);
  const std::vector<Box> merged = merge_nms(globalize(set), cfg.iou_threshold);
  emit(cfg, "merged.csv", boxes_csv(merged), out);
  emit(cfg, "centers.csv", points_csv(centers(merged)), out);
  out << "input_boxes " << set.boxes.size() << "\nkept_boxes " << merged.size() << '\n';
  return kExitOk;
}

int cmd_count(const Inputs& in, const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (!(cfg.units_per_meter > 0.0)) throw UsageError("--units-per-meter must be positive");
  if (!(cfg.match_radius > 0.0)) throw UsageError("--radius must be positive");
  const auto detected = read_points_csv(in.detected, cfg.units_per_meter);
  const auto labeled = read_points_csv(in.labeled, cfg.units_per_meter);
  const MatchReport r = match_counts(detected, labeled, cfg.match_radius);
  emit(cfg, "count_report.csv", match_report_csv(r), out);
  emit(cfg, "matches.csv", matches_csv(r), out);
  out << "accuracy " << format_number(r.accuracy) << '\n'
      << "shift_mean " << format_number(r.shift_mean) << '\n'
      << "shift_median " << format_number(r.shift_median) << '\n'
      << "shift_std " << format_number(r.shift_std) << '\n';
  return kExitOk;
}

int cmd_nn_stats(const Inputs& in, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (in.k < 1) throw UsageError("--k must be at least 1");
  if (in.bins < 1) throw UsageError("--bins must be at least 1");
  const PointPattern pattern = load_pattern(in, cfg, err);
  const NeighborStats s = nn_stats(pattern, in.k, in.bins);
  emit(cfg, "nn_summary.csv", nn_summary_csv(s, in.k), out);
  emit(cfg, "nn_histogram.csv", histogram_csv(s.histogram), out);
  emit(cfg, "nn_values.csv", values_csv("mean_knn_distance", s.per_point), out);
  out << "mean " << format_number(s.mean) << "\nmedian " << format_number(s.median) << "\nstd "
      << format_number(s.std) << '\n';
  return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  sub->add_option("--out-dir", cfg.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--units-per-meter", cfg.units_per_meter,
                  "Input coordinate units per meter (coordinates are divided by this)")
      ->capture_default_str();
}

void add_pattern_options(CLI::App* sub, Inputs& in, bool points_required) {
  auto* opt = sub->add_option("--points", in.points, "Point CSV with header x,y");
  if (points_required) opt->required();
  sub->add_option("--window", in.window,
                  "Observation window x_min,y_min,x_max,y_max in input units "
                  "(default: bounding box of the points)");
}

void add_grid_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--grid-max", cfg.grid_max,
                  "Largest grid distance in meters (default: half the shorter window side)");
  sub->add_option("--grid-steps", cfg.grid_steps, "Number of grid distances")->capture_default_str();
  sub->add_option("--n-ref", cfg.n_ref, "F reference points (0 = max(1000, n))")
      ->capture_default_str();
  sub->add_flag("--svg", cfg.svg, "Also write an SVG chart");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Inputs in;

  CLI::App app{"Spatial point-pattern toolkit: Ripley G/F/J, CSR envelopes, "
               "Poisson-Gaussian reproduction fitting and detection post-processing",
               "palmpat"};
  app.require_subcommand(1);

  auto* ripley = app.add_subcommand("ripley", "Empirical G, F or J curve");
  add_common(ripley, cfg);
  add_pattern_options(ripley, in, true);
  add_grid_options(ripley, cfg);
  ripley->add_option("--stat", in.stat, "Statistic: g, f or j")->capture_default_str();

  auto* env = app.add_subcommand("envelope", "Monte Carlo CSR envelope and p-values");
  add_common(env, cfg);
  add_pattern_options(env, in, true);
  add_grid_options(env, cfg);
  env->add_option("--stat", in.stat, "Statistic: g, f or j")->capture_default_str();
  env->add_option("--sims", cfg.envelope_m, "Number of CSR simulations (>= 19)")
      ->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Simulate a Poisson-Gaussian reproduction pattern");
  add_common(sim, cfg);
  add_pattern_options(sim, in, false);
  sim->add_option("--n", in.n, "Number of points (default: count of --points)");
  sim->add_option("--p", in.p, "Probability of the Gaussian (local) branch")->required();
  sim->add_option("--sigma", in.sigma, "Gaussian standard deviation in meters")->required();

  auto* fit_cmd = app.add_subcommand("fit", "Grid-search (p, sigma) for an observed pattern");
  add_common(fit_cmd, cfg);
  add_pattern_options(fit_cmd, in, true);
  add_grid_options(fit_cmd, cfg);
  fit_cmd->add_option("--p", cfg.p_candidates, "p candidates: start:stop:step or a,b,c")
      ->capture_default_str();
  fit_cmd->add_option("--sigma", cfg.sigma_candidates, "sigma candidates: start:stop:step or a,b,c")
      ->capture_default_str();
  fit_cmd->add_option("--trials", cfg.n_trials, "Simulations per candidate pair")
      ->capture_default_str();

  auto* merge = app.add_subcommand("merge", "Map tile detections to global coordinates and apply NMS");
  add_common(merge, cfg);
  merge->add_option("--detections", in.detections, "Detection CSV")->required();
  merge->add_flag("--global", in.global, "Boxes are already global (x_min,y_min,x_max,y_max,confidence)");
  merge->add_option("--patch-size", in.patch_size, "Patch size in pixels")->capture_default_str();
  merge->add_option("--stride", in.stride, "Patch stride in pixels")->capture_default_str();
  merge->add_option("--origin", in.origin, "Global offset x,y of tile (0,0)")->capture_default_str();
  merge->add_option("--iou", cfg.iou_threshold, "NMS IoU threshold")->capture_default_str();

  auto* count = app.add_subcommand("count", "Counting accuracy and localization shifts");
  add_common(count, cfg);
  count->add_option("--detected", in.detected, "Detected centers CSV (x,y)")->required();
  count->add_option("--labeled", in.labeled, "Labeled centers CSV (x,y)")->required();
  count->add_option("--radius", cfg.match_radius, "Match radius in meters")->capture_default_str();

  auto* nn = app.add_subcommand("nn-stats", "Mean k-nearest-neighbor distance statistics");
  add_common(nn, cfg);
  add_pattern_options(nn, in, true);
  nn->add_option("--k", in.k, "Neighbors averaged per point")->capture_default_str();
  nn->add_option("--bins", in.bins, "Histogram bins")->capture_default_str();

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("palmpat");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // subcommand-level --help surfaces as CallForHelp too; everything else is usage
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (ripley->parsed()) return cmd_ripley(in, cfg, out, err);
    if (env->parsed()) return cmd_envelope(in, cfg, out, err);
    if (sim->parsed()) return cmd_simulate(in, cfg, out, err);
    if (fit_cmd->parsed()) return cmd_fit(in, cfg, out, err);
    if (merge->parsed()) return cmd_merge(in, cfg, out, err);
    if (count->parsed()) return cmd_count(in, cfg, out, err);
    if (nn->parsed()) return cmd_nn_stats(in, cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const InvalidInput& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  err << "error: no subcommand given\n";
  return kExitUsage;
}

}  // namespace palmpat::cli

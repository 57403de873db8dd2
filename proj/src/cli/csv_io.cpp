#include "palmpat/cli/csv_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace palmpat::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

struct Row {
  std::size_t line_number;
  std::vector<double> values;
};

std::string location(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line);
}

// Reads a headed numeric CSV, requiring the exact header columns.
std::vector<Row> read_numeric_csv(const std::string& path,
                                  const std::vector<std::string_view>& header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::vector<Row> rows;
  std::string line;
  std::size_t line_number = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    if (line_number == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;
    const auto fields = split(view);
    if (!saw_header) {
      if (fields != header) {
        std::string expected;
        for (std::size_t i = 0; i < header.size(); ++i) {
          expected += (i ? "," : "") + std::string(header[i]);
        }
        throw DataError(location(path, line_number) + ": expected header '" + expected + "'");
      }
      saw_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      throw DataError(location(path, line_number) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    Row row{line_number, {}};
    row.values.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string_view f = fields[i];
      double v = 0.0;
      const auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || ec != std::errc{} || end != f.data() + f.size() || !std::isfinite(v)) {
        throw DataError(location(path, line_number) + ": column '" + std::string(header[i]) +
                        "' is not a finite number: '" + std::string(f) + "'");
      }
      row.values.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (!saw_header) throw DataError("'" + path + "' is empty");
  if (rows.empty()) throw DataError("'" + path + "' has a header but no data rows");
  return rows;
}

template <class Fn>
std::string build(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  if (v == 0.0) return "0";  // folds -0
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string format_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("NA");
}

std::vector<Point> read_points_csv(const std::string& path, double units_per_meter) {
  if (!(units_per_meter > 0.0)) throw DataError("units_per_meter must be positive");
  const auto rows = read_numeric_csv(path, {"x", "y"});
  std::vector<Point> pts;
  pts.reserve(rows.size());
  for (const Row& r : rows) pts.push_back({r.values[0] / units_per_meter, r.values[1] / units_per_meter});
  return pts;
}

PointPattern parse_points_csv(const std::string& path, double units_per_meter,
                              const std::optional<Window>& window, std::ostream& log) {
  std::vector<Point> pts = read_points_csv(path, units_per_meter);
  Window w;
  if (window) {
    w = *window;
  } else {
    w = {pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const Point& p : pts) {
      w.x_min = std::min(w.x_min, p.x);
      w.y_min = std::min(w.y_min, p.y);
      w.x_max = std::max(w.x_max, p.x);
      w.y_max = std::max(w.y_max, p.y);
    }
    log << "notice: no --window given; using the bounding box of '" << path << "' ("
        << format_number(w.x_min) << "," << format_number(w.y_min) << ","
        << format_number(w.x_max) << "," << format_number(w.y_max) << ")\n";
  }
  try {
    return PointPattern(w, std::move(pts));
  } catch (const InvalidInput& e) {
    throw DataError("'" + path + "': " + e.what());
  }
}

namespace {

Box checked_box(const std::string& path, std::size_t line, const Box& box) {
  try {
    validate(box);
  } catch (const InvalidInput& e) {
    throw DataError(location(path, line) + ": " + e.what());
  }
  return box;
}

}  // namespace

DetectionSet read_detections_csv(const std::string& path, bool global,
                                 const std::optional<TileLayout>& layout) {
  DetectionSet set;
  if (global) {
    const auto rows = read_numeric_csv(path, {"x_min", "y_min", "x_max", "y_max", "confidence"});
    for (const Row& r : rows) {
      set.boxes.push_back({0, 0, checked_box(path, r.line_number,
                                             {r.values[0], r.values[1], r.values[2], r.values[3],
                                              r.values[4]})});
    }
    return set;
  }
  set.layout = layout.value_or(TileLayout{});
  const auto rows = read_numeric_csv(
      path, {"tile_row", "tile_col", "x_min", "y_min", "x_max", "y_max", "confidence"});
  for (const Row& r : rows) {
    for (int c = 0; c < 2; ++c) {
      if (r.values[c] < 0 || r.values[c] != std::floor(r.values[c])) {
        throw DataError(location(path, r.line_number) +
                        ": tile indices must be nonnegative integers");
      }
    }
    set.boxes.push_back({static_cast<long>(r.values[0]), static_cast<long>(r.values[1]),
                         checked_box(path, r.line_number,
                                     {r.values[2], r.values[3], r.values[4], r.values[5],
                                      r.values[6]})});
  }
  return set;
}

std::string points_csv(std::span<const Point> points) {
  return build([&](std::ostream& os) {
    os << "x,y\n";
    for (const Point& p : points) os << format_number(p.x) << ',' << format_number(p.y) << '\n';
  });
}

std::string curve_csv(const RipleyCurve& curve) {
  return build([&](std::ostream& os) {
    os << "d,value\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
      os << format_number(curve.grid[i]) << ',' << format_number(curve.values[i]) << '\n';
    }
  });
}

std::string envelope_csv(const EnvelopeResult& r) {
  return build([&](std::ostream& os) {
    os << "d,observed,mean,lo95,hi95,p\n";
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
      os << format_number(r.grid[i]) << ',' << format_number(r.observed[i]) << ','
         << format_number(r.sim_mean[i]) << ',' << format_number(r.lo95[i]) << ','
         << format_number(r.hi95[i]) << ',' << format_number(r.p_values[i]) << '\n';
    }
  });
}

std::string fit_table_csv(const FitResult& result) {
  return build([&](std::ostream& os) {
    const std::size_t trials = result.table.empty() ? 0 : result.table.front().trials.size();
    os << "p,sigma,d_total";
    for (std::size_t t = 1; t <= trials; ++t) os << ",d_" << t;
    os << '\n';
    for (const FitRow& row : result.table) {
      os << format_number(row.params.p) << ',' << format_number(row.params.sigma) << ','
         << format_number(row.total);
      for (double d : row.trials) os << ',' << format_number(d);
      os << '\n';
    }
  });
}

std::string fit_best_csv(const FitResult& result) {
  return build([&](std::ostream& os) {
    os << "p,sigma,d_min\n"
       << format_number(result.best.p) << ',' << format_number(result.best.sigma) << ','
       << format_number(result.d_min) << '\n';
  });
}

std::string boxes_csv(const std::vector<Box>& boxes) {
  return build([&](std::ostream& os) {
    os << "x_min,y_min,x_max,y_max,confidence\n";
    for (const Box& b : boxes) {
      os << format_number(b.x_min) << ',' << format_number(b.y_min) << ','
         << format_number(b.x_max) << ',' << format_number(b.y_max) << ','
         << format_number(b.confidence) << '\n';
    }
  });
}

std::string match_report_csv(const MatchReport& r) {
  return build([&](std::ostream& os) {
    os << "metric,value\n"
       << "n_labeled," << r.n_labeled << '\n'
       << "n_detected," << r.n_detected << '\n'
       << "n_matched," << r.matched.size() << '\n'
       << "radius," << format_number(r.radius) << '\n'
       << "accuracy," << format_number(r.accuracy) << '\n'
       << "detected_rate," << format_number(r.detected_rate) << '\n'
       << "shift_mean," << format_number(r.shift_mean) << '\n'
       << "shift_median," << format_number(r.shift_median) << '\n'
       << "shift_std," << format_number(r.shift_std) << '\n';
  });
}

std::string matches_csv(const MatchReport& r) {
  return build([&](std::ostream& os) {
    os << "detected_index,labeled_index,detected_x,detected_y,labeled_x,labeled_y,distance\n";
    for (const Match& m : r.matched) {
      os << m.detected_index << ',' << m.labeled_index << ',' << format_number(m.detected.x) << ','
         << format_number(m.detected.y) << ',' << format_number(m.labeled.x) << ','
         << format_number(m.labeled.y) << ',' << format_number(m.distance) << '\n';
    }
  });
}

std::string nn_summary_csv(const NeighborStats& s, std::size_t k) {
  return build([&](std::ostream& os) {
    os << "metric,value\n"
       << "k," << k << '\n'
       << "n," << s.per_point.size() << '\n'
       << "mean," << format_number(s.mean) << '\n'
       << "median," << format_number(s.median) << '\n'
       << "std," << format_number(s.std) << '\n'
       << "min," << format_number(s.min) << '\n'
       << "max," << format_number(s.max) << '\n';
  });
}

std::string histogram_csv(const Histogram& h) {
  return build([&](std::ostream& os) {
    os << "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      os << format_number(h.edges[b]) << ',' << format_number(h.edges[b + 1]) << ','
         << h.counts[b] << '\n';
    }
  });
}

std::string values_csv(std::string_view column, const std::vector<double>& values) {
  return build([&](std::ostream& os) {
    os << "index," << column << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) os << i << ',' << format_number(values[i]) << '\n';
  });
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
  if (!out) throw DataError("failed while writing '" + path + "'");
}

}  // namespace palmpat::cli

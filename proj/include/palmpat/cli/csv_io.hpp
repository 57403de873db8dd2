// ============================================================================
// csv_io.hpp -- CSV readers and writers for the command-line front end
//
// Schemas:
//   points      x,y
//   detections  tile_row,tile_col,x_min,y_min,x_max,y_max,confidence
//               (x_min,y_min,x_max,y_max,confidence when already global)
//   curves      d,value
//   envelopes   d,observed,mean,lo95,hi95,p
//   fit table   p,sigma,d_total,d_1..d_N
// Numbers are written in shortest round-trip form; undefined values as NA.
// ============================================================================
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "palmpat/detections.hpp"
#include "palmpat/envelope.hpp"
#include "palmpat/geometry.hpp"
#include "palmpat/reproduction.hpp"
#include "palmpat/ripley.hpp"

namespace palmpat::cli {

/// Unreadable or malformed input data (exit code 3).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_number(double v);
std::string format_number(const std::optional<double>& v);

/// Reads an `x,y` file and divides coordinates by units_per_meter.
std::vector<Point> read_points_csv(const std::string& path, double units_per_meter);

/// Points as a pattern. Without an explicit window (given in working units)
/// the points' bounding box is used and a notice is written to `log`.
PointPattern parse_points_csv(const std::string& path, double units_per_meter,
                              const std::optional<Window>& window, std::ostream& log);

/// Detection file; `global` selects the 5-column schema.
DetectionSet read_detections_csv(const std::string& path, bool global,
                                 const std::optional<TileLayout>& layout);

std::string points_csv(std::span<const Point> points);
std::string curve_csv(const RipleyCurve& curve);
std::string envelope_csv(const EnvelopeResult& result);
std::string fit_table_csv(const FitResult& result);
std::string fit_best_csv(const FitResult& result);
std::string boxes_csv(const std::vector<Box>& boxes);
std::string match_report_csv(const MatchReport& report);
std::string matches_csv(const MatchReport& report);
std::string nn_summary_csv(const NeighborStats& stats, std::size_t k);
std::string histogram_csv(const Histogram& histogram);
std::string values_csv(std::string_view column, const std::vector<double>& values);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace palmpat::cli

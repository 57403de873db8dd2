#pragma once

#include <optional>
#include <string>
#include <vector>

namespace palmpat::cli {

struct ChartSeries {
  std::string label;
  std::string color;
  std::vector<std::optional<double>> y;
  bool dashed = false;
};

struct ChartBand {
  std::vector<std::optional<double>> lo;
  std::vector<std::optional<double>> hi;
  std::string color = "#9ecae1";
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<ChartSeries> series;
  std::optional<ChartBand> band;
};

/// Minimal standalone SVG line chart. Undefined samples break the polyline.
std::string line_chart_svg(const ChartSpec& spec);

}  // namespace palmpat::cli

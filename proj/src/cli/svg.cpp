#include "palmpat/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace palmpat::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 48.0;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string line_chart_svg(const ChartSpec& spec) {
  double x_lo = spec.x.empty() ? 0.0 : spec.x.front();
  double x_hi = spec.x.empty() ? 1.0 : spec.x.back();
  double y_lo = std::numeric_limits<double>::infinity();
  double y_hi = -std::numeric_limits<double>::infinity();
  auto scan = [&](const std::vector<std::optional<double>>& ys) {
    for (const auto& v : ys) {
      if (v && std::isfinite(*v)) {
        y_lo = std::min(y_lo, *v);
        y_hi = std::max(y_hi, *v);
      }
    }
  };
  for (const auto& s : spec.series) scan(s.y);
  if (spec.band) {
    scan(spec.band->lo);
    scan(spec.band->hi);
  }
  if (!std::isfinite(y_lo)) {
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(spec.title) << "</text>\n";

  if (spec.band) {
    // one polygon per run of consecutive defined band samples
    const auto& lo = spec.band->lo;
    const auto& hi = spec.band->hi;
    std::size_t i = 0;
    while (i < spec.x.size()) {
      if (!(lo[i] && hi[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < spec.x.size() && lo[j] && hi[j]) ++j;
      os << "<polygon fill=\"" << spec.band->color << "\" fill-opacity=\"0.6\" points=\"";
      for (std::size_t k = i; k < j; ++k) os << fixed(px(spec.x[k])) << ',' << fixed(py(*hi[k])) << ' ';
      for (std::size_t k = j; k-- > i;) os << fixed(px(spec.x[k])) << ',' << fixed(py(*lo[k])) << ' ';
      os << "\"/>\n";
      i = j;
    }
  }

  for (const auto& s : spec.series) {
    std::size_t i = 0;
    while (i < spec.x.size()) {
      if (!s.y[i]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < spec.x.size() && s.y[j]) ++j;
      os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.8\""
         << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
      for (std::size_t k = i; k < j; ++k) os << fixed(px(spec.x[k])) << ',' << fixed(py(*s.y[k])) << ' ';
      os << "\"/>\n";
      i = j;
    }
  }

  // axes
  os << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\""
     << fixed(kLeft + plot_w) << "\" y2=\"" << fixed(kTop + plot_h) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(kLeft)
     << "\" y2=\"" << fixed(kTop + plot_h) << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop + plot_h + 16)
     << "\" font-size=\"11\">" << label(x_lo) << "</text>\n";
  os << "<text x=\"" << fixed(kLeft + plot_w) << "\" y=\"" << fixed(kTop + plot_h + 16)
     << "\" font-size=\"11\" text-anchor=\"end\">" << label(x_hi) << "</text>\n";
  os << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(kTop + plot_h)
     << "\" font-size=\"11\" text-anchor=\"end\">" << label(y_lo) << "</text>\n";
  os << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(kTop + 10)
     << "\" font-size=\"11\" text-anchor=\"end\">" << label(y_hi) << "</text>\n";
  os << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(kHeight - 10)
     << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << fixed(kTop + plot_h / 2) << "\" font-size=\"12\" "
     << "text-anchor=\"middle\" transform=\"rotate(-90 16 " << fixed(kTop + plot_h / 2) << ")\">"
     << escape(spec.y_label) << "</text>\n";

  double legend_y = kTop + 12;
  for (const auto& s : spec.series) {
    os << "<line x1=\"" << fixed(kLeft + plot_w - 110) << "\" y1=\"" << fixed(legend_y - 4)
       << "\" x2=\"" << fixed(kLeft + plot_w - 90) << "\" y2=\"" << fixed(legend_y - 4)
       << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    os << "<text x=\"" << fixed(kLeft + plot_w - 84) << "\" y=\"" << fixed(legend_y)
       << "\" font-size=\"11\">" << escape(s.label) << "</text>\n";
    legend_y += 16;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace palmpat::cli

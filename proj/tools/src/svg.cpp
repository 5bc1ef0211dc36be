#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "fdts/format.hpp"

namespace fdts::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                  "#bcbd22", "#17becf"};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) { return format_fixed(v, 2); }

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi == lo) lo -= 0.5, hi += 0.5;
  }
};

std::string header(double width, double height, const std::string& title) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << num(width / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
    << escape(title) << "</text>\n";
  return s.str();
}

}  // namespace

std::string render_line_plot(const SvgLinePlot& plot) {
  Range xr, yr;
  for (const SvgSeries& s : plot.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
    if (s.stems) yr.add(0.0);
  }
  for (double v : plot.reference_y) yr.add(v);
  xr.finish();
  yr.finish();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream s;
  s << header(kWidth, kHeight, plot.title);
  s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    s << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(kTop + ph + 16)
      << "\" text-anchor=\"middle\">" << format_double(std::round(xv * 1e4) / 1e4) << "</text>\n";
    s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(yv) + 4)
      << "\" text-anchor=\"end\">" << format_double(std::round(yv * 1e4) / 1e4) << "</text>\n";
  }
  s << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 10)
    << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  s << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << num(kTop + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n";

  for (double ref : plot.reference_y) {
    s << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + pw) << "\" y1=\"" << num(py(ref))
      << "\" y2=\"" << num(py(ref)) << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  }

  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const SvgSeries& series = plot.series[i];
    const char* color = kPalette[i % kPalette.size()];
    const std::size_t n = std::min(series.x.size(), series.y.size());
    if (series.stems) {
      for (std::size_t k = 0; k < n; ++k) {
        s << "<line x1=\"" << num(px(series.x[k])) << "\" x2=\"" << num(px(series.x[k]))
          << "\" y1=\"" << num(py(0.0)) << "\" y2=\"" << num(py(series.y[k])) << "\" stroke=\""
          << color << "\" stroke-width=\"2\"/>\n";
      }
    } else {
      s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(series.y[k])) continue;
        s << num(px(series.x[k])) << ',' << num(py(series.y[k])) << ' ';
      }
      s << "\"/>\n";
    }
    if (!series.label.empty()) {
      const double ly = kTop + 14.0 + 16.0 * static_cast<double>(i);
      s << "<rect x=\"" << num(kLeft + pw + 12) << "\" y=\"" << num(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
        << color << "\"/>\n<text x=\"" << num(kLeft + pw + 28) << "\" y=\"" << num(ly) << "\">"
        << escape(series.label) << "</text>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

std::string render_heatmap(const SvgHeatmap& map) {
  Range vr;
  for (const auto& row : map.values) {
    for (const auto& v : row) {
      if (v) vr.add(*v);
    }
  }
  vr.finish();

  const std::size_t rows = map.row_names.size();
  const std::size_t cols = map.col_names.size();
  constexpr double cell_w = 56.0;
  constexpr double cell_h = 26.0;
  const double left = 90.0;
  const double top = 50.0;
  const double width = left + cell_w * static_cast<double>(cols) + 30.0;
  const double height = top + cell_h * static_cast<double>(rows) + 60.0;

  // Blue (most negative) to red (least negative).
  auto color = [&](double v) {
    const double t = (v - vr.lo) / (vr.hi - vr.lo);
    const int r = static_cast<int>(std::lround(40 + 200 * t));
    const int g = static_cast<int>(std::lround(80 + 80 * (1 - std::abs(2 * t - 1))));
    const int b = static_cast<int>(std::lround(240 - 200 * t));
    return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
  };

  std::ostringstream s;
  s << header(width, height, map.title);
  for (std::size_t i = 0; i < rows; ++i) {
    const double y = top + cell_h * static_cast<double>(i);
    s << "<text x=\"" << num(left - 6) << "\" y=\"" << num(y + cell_h / 2 + 4)
      << "\" text-anchor=\"end\">" << escape(map.row_names[i]) << "</text>\n";
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = left + cell_w * static_cast<double>(j);
      std::string fill = "#ccc";
      std::string label = "n/a";
      if (i < map.values.size() && j < map.values[i].size() && map.values[i][j].has_value()) {
        const double v = map.values[i][j].value();
        fill = color(v);
        label = format_fixed(v, 2);
      }
      s << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << cell_w
        << "\" height=\"" << cell_h << "\" fill=\"" << fill << "\" stroke=\"white\"/>\n";
      s << "<text x=\"" << num(x + cell_w / 2) << "\" y=\"" << num(y + cell_h / 2 + 4)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << label << "</text>\n";
    }
  }
  const double bottom = top + cell_h * static_cast<double>(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    s << "<text x=\"" << num(left + cell_w * (static_cast<double>(j) + 0.5)) << "\" y=\""
      << num(bottom + 16) << "\" text-anchor=\"middle\">" << escape(map.col_names[j]) << "</text>\n";
  }
  s << "<text x=\"" << num(left + cell_w * static_cast<double>(cols) / 2) << "\" y=\""
    << num(bottom + 40) << "\" text-anchor=\"middle\">" << escape(map.col_label) << "</text>\n";
  s << "<text x=\"14\" y=\"" << num(top - 10) << "\">" << escape(map.row_label) << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace fdts::cli

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fdts::cli {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  /// Vertical stems from y = 0 instead of a polyline (ACF style).
  bool stems = false;
};

struct SvgLinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<SvgSeries> series;
  /// Dashed horizontal reference lines.
  std::vector<double> reference_y;
};

std::string render_line_plot(const SvgLinePlot& plot);

struct SvgHeatmap {
  std::string title;
  std::string row_label;
  std::string col_label;
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;
  /// [row][col]; empty cells are drawn grey.
  std::vector<std::vector<std::optional<double>>> values;
};

std::string render_heatmap(const SvgHeatmap& map);

}  // namespace fdts::cli

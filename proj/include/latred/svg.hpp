#pragma once

#include <string>
#include <utility>
#include <vector>

namespace latred {

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y)
};

struct SvgChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;  // when set, y values are plotted on a log10 axis
  std::vector<SvgSeries> series;
};

/// Renders a self-contained SVG line chart (axes, decade gridlines for log
/// scale, legend). Non-positive y values are dropped from log-scale plots.
std::string render_line_chart(const SvgChartSpec& spec);

void write_svg_file(const std::string& path, const SvgChartSpec& spec);

}  // namespace latred

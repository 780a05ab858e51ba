#include "latred/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "latred/errors.hpp"

namespace latred {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 200.0;  // room for the legend
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_line_chart(const SvgChartSpec& spec) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const SvgSeries& s : spec.series)
    for (auto [x, y] : s.points) {
      if (spec.log_y && !(y > 0.0)) continue;
      double yv = spec.log_y ? std::log10(y) : y;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, yv);
      ymax = std::max(ymax, yv);
    }
  if (!(xmin <= xmax)) {  // no plottable points
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  if (spec.log_y) {
    ymin = std::floor(ymin);
    ymax = std::ceil(ymax);
  } else {
    double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double yv) { return kTop + (ymax - yv) / (ymax - ymin) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape(spec.title)
      << "</text>\n";

  // frame
  out << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\""
      << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // y ticks: decades in log mode, 6 even steps otherwise
  if (spec.log_y) {
    for (double d = ymin; d <= ymax + 1e-9; d += 1.0) {
      double y = py(d);
      out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\""
          << fmt(kLeft + plot_w) << "\" y2=\"" << fmt(y)
          << "\" stroke=\"#dddddd\"/>\n";
      out << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e"
          << fmt_tick(d) << "</text>\n";
    }
  } else {
    for (int t = 0; t <= 6; ++t) {
      double yv = ymin + (ymax - ymin) * t / 6.0;
      double y = py(yv);
      out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\""
          << fmt(kLeft + plot_w) << "\" y2=\"" << fmt(y)
          << "\" stroke=\"#dddddd\"/>\n";
      out << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
          << fmt_tick(yv) << "</text>\n";
    }
  }
  for (int t = 0; t <= 6; ++t) {
    double xv = xmin + (xmax - xmin) * t / 6.0;
    double x = px(xv);
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop + plot_h) << "\" x2=\""
        << fmt(x) << "\" y2=\"" << fmt(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + plot_h + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << fmt_tick(xv) << "</text>\n";
  }
  out << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 16)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape(spec.x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << fmt(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 20 " << fmt(kTop + plot_h / 2) << ")\">"
      << escape(spec.y_label) << "</text>\n";

  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const SvgSeries& s = spec.series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::ostringstream pts;
    bool first = true;
    for (auto [x, y] : s.points) {
      if (spec.log_y && !(y > 0.0)) continue;
      double yv = spec.log_y ? std::log10(y) : y;
      if (!first) pts << " ";
      pts << fmt(px(x)) << "," << fmt(py(yv));
      first = false;
    }
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"" << pts.str() << "\"/>\n";
    for (auto [x, y] : s.points) {
      if (spec.log_y && !(y > 0.0)) continue;
      double yv = spec.log_y ? std::log10(y) : y;
      out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(yv))
          << "\" r=\"2.6\" fill=\"" << color << "\"/>\n";
    }
    double ly = kTop + 16 + 18.0 * static_cast<double>(si);
    double lx = kLeft + plot_w + 14;
    out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << fmt(lx + 22) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(lx + 28) << "\" y=\"" << fmt(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg_file(const std::string& path, const SvgChartSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << render_line_chart(spec);
}

}  // namespace latred

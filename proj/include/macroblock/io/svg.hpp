#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

#include "macroblock/curve_table.hpp"
#include "macroblock/error.hpp"
#include "macroblock/io/csv.hpp"

namespace macroblock::io {

struct AxisBounds {
  double xmin, xmax, ymin, ymax;
};

namespace detail {

inline std::pair<double, double> padded(double lo, double hi) {
  if (lo == hi) return {lo - 0.5, hi + 0.5};
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace detail

// Data extent of the x column and of all y columns, padded by 5% per side.
inline AxisBounds svg_axis_bounds(const CurveTable& table) {
  if (table.headers.size() < 2) throw Error("SVG needs an x column and at least one y column");
  if (table.rows.empty()) throw Error("SVG needs at least one row");
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& row : table.rows) {
    xmin = std::min(xmin, row[0]);
    xmax = std::max(xmax, row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      ymin = std::min(ymin, row[c]);
      ymax = std::max(ymax, row[c]);
    }
  }
  const auto [x0, x1] = detail::padded(xmin, xmax);
  const auto [y0, y1] = detail::padded(ymin, ymax);
  return {x0, x1, y0, y1};
}

// Standalone line chart: one polyline per y column, legend in column order.
inline std::string render_svg(const CurveTable& table) {
  table.validate();
  const AxisBounds b = svg_axis_bounds(table);
  constexpr double width = 800, height = 500;
  constexpr double left = 70, right = 220, top = 30, bottom = 60;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  auto px = [&](double x) { return left + (x - b.xmin) / (b.xmax - b.xmin) * plot_w; };
  auto py = [&](double y) { return top + (b.ymax - y) / (b.ymax - b.ymin) * plot_h; };
  static constexpr std::array<const char*, 8> palette = {
      "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  std::string svg;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
                "viewBox=\"0 0 %g %g\">\n",
                width, height, width, height);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                left, top, plot_w, plot_h);
  svg += buf;

  for (int t = 0; t <= 4; ++t) {
    const double fx = b.xmin + (b.xmax - b.xmin) * t / 4.0;
    const double fy = b.ymin + (b.ymax - b.ymin) * t / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"middle\">%.3g</text>\n",
                  px(fx), top + plot_h + 16, fx);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%.3g</text>\n",
                  left - 6, py(fy) + 4, fy);
    svg += buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"13\" text-anchor=\"middle\">",
                left + plot_w / 2, height - 15);
  svg += buf;
  svg += table.headers[0] + "</text>\n";

  for (std::size_t c = 1; c < table.headers.size(); ++c) {
    const char* color = palette[(c - 1) % palette.size()];
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", r ? " " : "", px(table.rows[r][0]),
                    py(table.rows[r][c]));
      svg += buf;
    }
    svg += "\"/>\n";
    const double ly = top + 14.0 * static_cast<double>(c);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" "
                  "stroke-width=\"2\"/>\n<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\">",
                  width - right + 10, ly, width - right + 30, ly, color, width - right + 35, ly + 4);
    svg += buf;
    svg += table.headers[c] + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

inline void emit_svg(const CurveTable& table, const std::filesystem::path& path) {
  write_file_atomically(path, render_svg(table));
}

}  // namespace macroblock::io

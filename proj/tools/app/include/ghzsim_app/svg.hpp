#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ghzsim::app {

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
  bool points = false;  // markers only, otherwise a polyline
};

struct PlotBox {
  double x0, y0, x1, y1;  // data coordinates
};

struct Plot {
  std::string title, x_label, y_label;
  bool log2_y = false;
  std::vector<PlotSeries> series;
  std::optional<PlotBox> box;
};

/// Self-contained SVG document for a line or scatter chart. Non-finite points
/// (and non-positive ones on a log axis) are skipped.
std::string render_svg(const Plot& plot);

void write_svg_file(const std::string& path, const Plot& plot);

}  // namespace ghzsim::app

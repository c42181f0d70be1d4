#include "ghzsim_app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ghzsim::app {
namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 55;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
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

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) lo = 0, hi = 1;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

}  // namespace

std::string render_svg(const Plot& plot) {
  auto ty = [&](double y) { return plot.log2_y ? std::log2(y) : y; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!plot.log2_y || y > 0);
  };

  Range xr, yr;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      xr.include(s.x[i]);
      yr.include(ty(s.y[i]));
    }
  }
  if (plot.box) {
    xr.include(plot.box->x0);
    xr.include(plot.box->x1);
    yr.include(ty(plot.box->y0));
    yr.include(ty(plot.box->y1));
  }
  xr.finish();
  yr.finish();

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (ty(y) - yr.lo) / (yr.hi - yr.lo)) * ph; };
  auto py_raw = [&](double t) { return kTop + (1.0 - (t - yr.lo) / (yr.hi - yr.lo)) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(plot.title) << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 5.0;
    const double tv = yr.lo + (yr.hi - yr.lo) * k / 5.0;
    svg << "<text x=\"" << num(px(xv)) << "\" y=\"" << kTop + ph + 18
        << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(py_raw(tv) + 4)
        << "\" text-anchor=\"end\">" << (plot.log2_y ? "2^" + num(tv) : num(tv)) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  svg << "<text transform=\"translate(16 " << kTop + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(plot.y_label) << "</text>\n";

  if (plot.box) {
    const auto& b = *plot.box;
    const double x0 = px(b.x0), x1 = px(b.x1), y0 = py(b.y1), y1 = py(b.y0);
    svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0)
        << "\" height=\"" << num(y1 - y0)
        << "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"6 3\"/>\n";
  }

  for (std::size_t si = 0; si < plot.series.size(); ++si) {
    const auto& s = plot.series[si];
    const char* colour = kPalette[si % std::size(kPalette)];
    const std::size_t count = std::min(s.x.size(), s.y.size());
    if (s.points) {
      svg << "<g fill=\"" << colour << "\" fill-opacity=\"0.35\">\n";
      for (std::size_t i = 0; i < count; ++i) {
        if (!usable(s.x[i], s.y[i])) continue;
        const double cx = px(s.x[i]), cy = py(s.y[i]);
        if (cx < kLeft || cx > kLeft + pw || cy < kTop || cy > kTop + ph) continue;
        svg << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"1.2\"/>\n";
      }
      svg << "</g>\n";
    } else {
      svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < count; ++i) {
        if (!usable(s.x[i], s.y[i])) continue;
        svg << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
      }
      svg << "\"/>\n";
    }
    const double ly = kTop + 14 + 18 * static_cast<double>(si);
    svg << "<rect x=\"" << kLeft + pw + 12 << "\" y=\"" << ly - 9
        << "\" width=\"12\" height=\"12\" fill=\"" << colour << "\"/>\n";
    svg << "<text x=\"" << kLeft + pw + 30 << "\" y=\"" << ly + 1 << "\">" << escape(s.label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_svg_file(const std::string& path, const Plot& plot) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << render_svg(plot);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace ghzsim::app

#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "tracemap.hpp"

namespace cmvlab {

namespace detail {

inline std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace detail

// Deterministic SVG: the unit circle with the bounded set drawn as arcs, tick
// marks at verdict changes, and a Lyapunov-vs-angle curve underneath.
inline std::string scan_to_svg(const SpectrumScan& scan) {
  const double cx = 320, cy = 300, R = 240;
  const double panel_x0 = 40, panel_x1 = 920, panel_y0 = 620, panel_y1 = 780;
  auto pt = [&](double angle) {
    return std::pair<double, double>{cx + R * std::cos(angle), cy - R * std::sin(angle)};
  };
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"820\" "
       "viewBox=\"0 0 960 820\">\n";
  s += "<rect width=\"960\" height=\"820\" fill=\"white\"/>\n";
  s += "<circle cx=\"" + detail::fmt_coord(cx) + "\" cy=\"" + detail::fmt_coord(cy) +
       "\" r=\"" + detail::fmt_coord(R) + "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";

  // group consecutive bounded grid points into arcs
  int n = scan.grid;
  auto bounded = [&](int i) {
    return scan.points[static_cast<size_t>(((i % n) + n) % n)].bounded_at(scan.budget);
  };
  double cell = 2 * std::numbers::pi / n;
  bool all_bounded = true, none_bounded = true;
  for (int i = 0; i < n; ++i) (bounded(i) ? none_bounded : all_bounded) = false;
  if (all_bounded) {
    s += "<circle cx=\"" + detail::fmt_coord(cx) + "\" cy=\"" + detail::fmt_coord(cy) +
         "\" r=\"" + detail::fmt_coord(R) +
         "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"6\"/>\n";
  } else if (!none_bounded) {
    // rotate so index start-1 is unbounded; then no run crosses the window edge
    int start = 0;
    while (bounded(start - 1)) ++start;
    for (int i = start; i < start + n;) {
      if (!bounded(i)) {
        ++i;
        continue;
      }
      int j = i;
      while (j + 1 < start + n && bounded(j + 1)) ++j;
      double a0 = cell * i - cell / 2;
      double a1 = cell * j + cell / 2;
      auto [x0, y0] = pt(a0);
      auto [x1, y1] = pt(a1);
      int large = (a1 - a0) > std::numbers::pi ? 1 : 0;
      s += "<path d=\"M " + detail::fmt_coord(x0) + " " + detail::fmt_coord(y0) + " A " +
           detail::fmt_coord(R) + " " + detail::fmt_coord(R) + " 0 " + std::to_string(large) +
           " 0 " + detail::fmt_coord(x1) + " " + detail::fmt_coord(y1) +
           "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"6\"/>\n";
      // gap tick marks at the run ends
      for (double a : {a0, a1}) {
        double tx0 = cx + (R - 10) * std::cos(a), ty0 = cy - (R - 10) * std::sin(a);
        double tx1 = cx + (R + 10) * std::cos(a), ty1 = cy - (R + 10) * std::sin(a);
        s += "<line x1=\"" + detail::fmt_coord(tx0) + "\" y1=\"" + detail::fmt_coord(ty0) +
             "\" x2=\"" + detail::fmt_coord(tx1) + "\" y2=\"" + detail::fmt_coord(ty1) +
             "\" stroke=\"#c03030\" stroke-width=\"1\"/>\n";
      }
      i = j + 1;
    }
  }

  // Lyapunov panel
  double ly_max = 1e-12;
  for (const ScanPoint& p : scan.points) ly_max = std::max(ly_max, p.lyapunov);
  s += "<rect x=\"" + detail::fmt_coord(panel_x0) + "\" y=\"" + detail::fmt_coord(panel_y0) +
       "\" width=\"" + detail::fmt_coord(panel_x1 - panel_x0) + "\" height=\"" +
       detail::fmt_coord(panel_y1 - panel_y0) +
       "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  s += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
  for (int i = 0; i < n; ++i) {
    const ScanPoint& p = scan.points[static_cast<size_t>(i)];
    double x = panel_x0 + (panel_x1 - panel_x0) * p.angle / (2 * std::numbers::pi);
    double clamped = std::max(0.0, p.lyapunov);
    double y = panel_y1 - (panel_y1 - panel_y0) * clamped / ly_max;
    if (i) s += ' ';
    s += detail::fmt_coord(x) + "," + detail::fmt_coord(y);
  }
  s += "\"/>\n";
  s += "<text x=\"40\" y=\"30\" font-family=\"monospace\" font-size=\"14\">bounded arcs at budget " +
       std::to_string(scan.budget) + ", grid " + std::to_string(scan.grid) + "</text>\n";
  s += "<text x=\"40\" y=\"610\" font-family=\"monospace\" font-size=\"14\">Lyapunov estimate vs angle (max " +
       detail::fmt_coord(ly_max) + ")</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace cmvlab

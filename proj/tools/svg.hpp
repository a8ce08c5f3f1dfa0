#pragma once

// Minimal hand-emitted SVG line charts for eigenvalue decay and
// concentration curves. No dependencies; output is a standalone <svg>.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace svgplot {

struct Series {
  std::string label;
  std::string color = "#1f6fb2";
  std::vector<std::pair<double, double>> points;
};

struct HLine {
  std::string label;
  std::string color = "#b23a1f";
  double y = 0.0;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

// round the raw span out to a tidy tick step (1/2/5 * 10^k)
inline double nice_step(double span, int target_ticks) {
  if (span <= 0.0) return 1.0;
  const double raw = span / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  const double snapped = frac < 1.5 ? 1.0 : frac < 3.5 ? 2.0 : frac < 7.5 ? 5.0 : 10.0;
  return snapped * mag;
}

}  // namespace detail

inline std::string line_chart(const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<Series>& series,
                              const std::vector<HLine>& hlines = {},
                              int width = 860, int height = 520) {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool seen = false;
  for (const Series& s : series)
    for (auto [x, y] : s.points) {
      if (!seen) {
        x_min = x_max = x;
        y_min = y_max = y;
        seen = true;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  for (const HLine& h : hlines) {
    y_min = std::min(y_min, h.y);
    y_max = std::max(y_max, h.y);
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;
  const double y_pad = 0.06 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double ml = 72, mr = 24, mt = 44, mb = 52;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto px = [&](double x) { return ml + pw * (x - x_min) / (x_max - x_min); };
  auto py = [&](double y) { return mt + ph * (y_max - y) / (y_max - y_min); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";

  // grid + ticks
  const double xs = detail::nice_step(x_max - x_min, 8);
  const double ys = detail::nice_step(y_max - y_min, 6);
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">\n";
  for (double x = std::ceil(x_min / xs) * xs; x <= x_max + 1e-12 * xs; x += xs) {
    out << "<line x1=\"" << px(x) << "\" y1=\"" << mt << "\" x2=\"" << px(x)
        << "\" y2=\"" << mt + ph << "\" stroke=\"#e5e5e5\"/>\n";
    out << "<text x=\"" << px(x) << "\" y=\"" << mt + ph + 16
        << "\" text-anchor=\"middle\">" << detail::fmt(x) << "</text>\n";
  }
  for (double y = std::ceil(y_min / ys) * ys; y <= y_max + 1e-12 * ys; y += ys) {
    out << "<line x1=\"" << ml << "\" y1=\"" << py(y) << "\" x2=\"" << ml + pw
        << "\" y2=\"" << py(y) << "\" stroke=\"#e5e5e5\"/>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << py(y) + 4
        << "\" text-anchor=\"end\">" << detail::fmt(y) << "</text>\n";
  }
  out << "</g>\n";
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#888\"/>\n";
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << mt + ph / 2 << ")\">" << y_label << "</text>\n";

  for (const HLine& h : hlines) {
    out << "<line x1=\"" << ml << "\" y1=\"" << py(h.y) << "\" x2=\""
        << ml + pw << "\" y2=\"" << py(h.y) << "\" stroke=\"" << h.color
        << "\" stroke-dasharray=\"6 4\"/>\n";
    out << "<text x=\"" << ml + pw - 4 << "\" y=\"" << py(h.y) - 5
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\" fill=\""
        << h.color << "\">" << h.label << "</text>\n";
  }

  int legend_y = static_cast<int>(mt) + 16;
  for (const Series& s : series) {
    if (s.points.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.8\" points=\"";
    for (auto [x, y] : s.points) out << px(x) << "," << py(y) << " ";
    out << "\"/>\n";
    for (auto [x, y] : s.points)
      out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
          << "\" r=\"2.2\" fill=\"" << s.color << "\"/>\n";
    if (!s.label.empty()) {
      out << "<rect x=\"" << ml + 10 << "\" y=\"" << legend_y - 9
          << "\" width=\"14\" height=\"4\" fill=\"" << s.color << "\"/>\n";
      out << "<text x=\"" << ml + 30 << "\" y=\"" << legend_y
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
          << "</text>\n";
      legend_y += 17;
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace svgplot

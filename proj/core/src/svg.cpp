#include "biorth/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>

#include "biorth/errors.hpp"

namespace biorth {

namespace {

constexpr double kWidth = 800.0, kHeight = 500.0;
constexpr double kLeft = 70.0, kRight = 160.0, kTop = 40.0, kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
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

std::vector<double> ticks(double lo, double hi, int target = 5) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> out;
  double t = std::ceil(lo / step) * step;
  for (; t <= hi + 1e-12 * step; t += step) out.push_back(t);
  return out;
}

}  // namespace

std::string render_line_chart(const std::vector<Series>& series,
                              const PlotLabels& labels) {
  if (series.empty()) throw input_error("emit_plot: no series given");
  for (const Series& s : series) {
    if (s.x.size() != s.y.size())
      throw input_error("emit_plot: series '" + s.name +
                        "' has mismatched x/y lengths");
    if (s.x.size() < 2)
      throw input_error("emit_plot: series '" + s.name +
                        "' needs at least 2 points");
  }

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const Series& s : series) {
    for (double v : s.x) {
      x_lo = std::min(x_lo, v);
      x_hi = std::max(x_hi, v);
    }
    for (double v : s.y) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
  const double y_pad = 0.05 * (y_hi - y_lo);
  y_lo -= y_pad;
  y_hi += y_pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto map_x = [&](double v) {
    return kLeft + (v - x_lo) / (x_hi - x_lo) * plot_w;
  };
  const auto map_y = [&](double v) {
    return kTop + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
         "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) +
         " " + fmt(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!labels.title.empty())
    svg += "<text x=\"" + fmt(kWidth / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" +
           xml_escape(labels.title) + "</text>\n";

  // grid + axis ticks
  svg += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double t : ticks(x_lo, x_hi)) {
    const double sx = map_x(t);
    svg += "<line x1=\"" + fmt(sx) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
           fmt(sx) + "\" y2=\"" + fmt(kTop + plot_h) + "\"/>\n";
  }
  for (double t : ticks(y_lo, y_hi)) {
    const double sy = map_y(t);
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(sy) + "\" x2=\"" +
           fmt(kLeft + plot_w) + "\" y2=\"" + fmt(sy) + "\"/>\n";
  }
  svg += "</g>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  for (double t : ticks(x_lo, x_hi))
    svg += "<text x=\"" + fmt(map_x(t)) + "\" y=\"" +
           fmt(kTop + plot_h + 16) + "\" text-anchor=\"middle\">" + fmt(t) +
           "</text>\n";
  for (double t : ticks(y_lo, y_hi))
    svg += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(map_y(t) + 4) +
           "\" text-anchor=\"end\">" + fmt(t) + "</text>\n";
  svg += "</g>\n";

  // axes
  svg += "<g stroke=\"#333333\" stroke-width=\"1.5\">\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop + plot_h) +
         "\" x2=\"" + fmt(kLeft + plot_w) + "\" y2=\"" + fmt(kTop + plot_h) +
         "\"/>\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
         fmt(kLeft) + "\" y2=\"" + fmt(kTop + plot_h) + "\"/>\n";
  svg += "</g>\n";
  if (!labels.x_axis.empty())
    svg += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" +
           fmt(kHeight - 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">" +
           xml_escape(labels.x_axis) + "</text>\n";
  if (!labels.y_axis.empty())
    svg += "<text x=\"18\" y=\"" + fmt(kTop + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 18 " +
           fmt(kTop + plot_h / 2) + ")\">" + xml_escape(labels.y_axis) +
           "</text>\n";

  // series polylines + legend
  double legend_y = kTop + 10;
  for (const Series& s : series) {
    const char* color = kPalette[fnv1a(s.name) % kPaletteSize];
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i > 0) svg += ' ';
      svg += fmt(map_x(s.x[i])) + "," + fmt(map_y(s.y[i]));
    }
    svg += "\"/>\n";
    const double lx = kLeft + plot_w + 14;
    svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(legend_y) + "\" x2=\"" +
           fmt(lx + 22) + "\" y2=\"" + fmt(legend_y) + "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(lx + 28) + "\" y=\"" + fmt(legend_y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           xml_escape(s.name) + "</text>\n";
    legend_y += 20;
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const std::vector<Series>& series, const PlotLabels& labels,
               const std::string& path) {
  const std::string body = render_line_chart(series, labels);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("emit_plot: cannot open '" + path + "'");
  out << body;
}

}  // namespace biorth

// Static SVG line charts for the growth reports. Output bytes are a pure
// function of the input series: no timestamps, fixed float formatting,
// series colors chosen by a hash of the name.

#pragma once

#include <string>
#include <vector>

namespace biorth {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotLabels {
  std::string title;
  std::string x_axis;
  std::string y_axis;
};

// Requires >= 1 series with >= 2 points each (input_error otherwise).
std::string render_line_chart(const std::vector<Series>& series,
                              const PlotLabels& labels);

void emit_plot(const std::vector<Series>& series, const PlotLabels& labels,
               const std::string& path);

}  // namespace biorth

#pragma once

#include <string>
#include <vector>

namespace zidlab {

struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> ci_half; // optional 95% CI half-width, empty = none
};

std::string line_chart_svg(const std::string &title, const std::string &xlabel,
                           const std::string &ylabel,
                           const std::vector<SvgSeries> &series);

// Row-major grid rendered with a dark-to-bright ramp plus a color bar.
// mask[i] = false paints the cell neutral gray (walls, sources).
std::string heatmap_svg(const std::string &title, int width, int height,
                        const std::vector<double> &values,
                        const std::vector<bool> &mask);

std::string boxplot_svg(const std::string &title, const std::string &ylabel,
                        const std::vector<std::string> &labels,
                        const std::vector<std::vector<double>> &samples,
                        bool log_scale = false);

} // namespace zidlab

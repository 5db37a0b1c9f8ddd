#include "core/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace zidlab {

namespace {

constexpr const char *kPalette[] = {"#4363d8", "#e6194b", "#3cb44b", "#f58231",
                                    "#911eb4", "#46422d", "#42d4f4", "#808000"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string esc(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

struct Scale {
  double lo = 0.0, hi = 1.0, px0 = 0.0, px1 = 1.0;
  double operator()(double v) const {
    if (hi == lo)
      return (px0 + px1) / 2.0;
    return px0 + (v - lo) / (hi - lo) * (px1 - px0);
  }
};

std::string axis_ticks(const Scale &sx, const Scale &sy, double plot_bottom,
                       double plot_left) {
  std::string out;
  for (int i = 0; i <= 4; ++i) {
    const double fx = sx.lo + (sx.hi - sx.lo) * i / 4.0;
    const double px = sx(fx);
    out += "<line x1='" + num(px) + "' y1='" + num(plot_bottom) + "' x2='" +
           num(px) + "' y2='" + num(plot_bottom + 4) +
           "' stroke='#333' stroke-width='1'/>\n";
    out += "<text x='" + num(px) + "' y='" + num(plot_bottom + 16) +
           "' font-size='10' text-anchor='middle'>" + num(fx) + "</text>\n";
    const double fy = sy.lo + (sy.hi - sy.lo) * i / 4.0;
    const double py = sy(fy);
    out += "<line x1='" + num(plot_left - 4) + "' y1='" + num(py) + "' x2='" +
           num(plot_left) + "' y2='" + num(py) +
           "' stroke='#333' stroke-width='1'/>\n";
    out += "<text x='" + num(plot_left - 6) + "' y='" + num(py + 3) +
           "' font-size='10' text-anchor='end'>" + num(fy) + "</text>\n";
  }
  return out;
}

} // namespace

std::string line_chart_svg(const std::string &title, const std::string &xlabel,
                           const std::string &ylabel,
                           const std::vector<SvgSeries> &series) {
  const double w = 640, h = 420, left = 60, right = 140, top = 36, bottom = 50;
  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  bool first = true;
  for (const auto &s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      double half = i < s.ci_half.size() ? s.ci_half[i] : 0.0;
      if (first) {
        xlo = xhi = s.x[i];
        ylo = s.y[i] - half;
        yhi = s.y[i] + half;
        first = false;
      }
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i] - half);
      yhi = std::max(yhi, s.y[i] + half);
    }
  if (ylo > 0 && ylo < 0.25 * (yhi - ylo))
    ylo = 0;
  const double pad = (yhi - ylo) * 0.05 + 1e-12;
  ylo -= pad;
  yhi += pad;

  Scale sx{xlo, xhi, left, w - right};
  Scale sy{ylo, yhi, h - bottom, top};

  std::string svg =
      "<svg xmlns='http://www.w3.org/2000/svg' width='" + num(w) +
      "' height='" + num(h) + "' viewBox='0 0 " + num(w) + " " + num(h) +
      "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  svg += "<text x='" + num(w / 2) + "' y='20' font-size='14' "
         "text-anchor='middle' font-weight='bold'>" +
         esc(title) + "</text>\n";
  svg += "<rect x='" + num(left) + "' y='" + num(top) + "' width='" +
         num(w - right - left) + "' height='" + num(h - bottom - top) +
         "' fill='none' stroke='#333'/>\n";
  svg += axis_ticks(sx, sy, h - bottom, left);
  svg += "<text x='" + num((left + w - right) / 2) + "' y='" + num(h - 12) +
         "' font-size='12' text-anchor='middle'>" + esc(xlabel) + "</text>\n";
  svg += "<text x='16' y='" + num((top + h - bottom) / 2) +
         "' font-size='12' text-anchor='middle' transform='rotate(-90 16 " +
         num((top + h - bottom) / 2) + ")'>" + esc(ylabel) + "</text>\n";

  for (size_t k = 0; k < series.size(); ++k) {
    const auto &s = series[k];
    const char *color = kPalette[k % 8];
    if (!s.ci_half.empty() && s.x.size() > 1) {
      std::string pts;
      for (size_t i = 0; i < s.x.size(); ++i)
        pts += num(sx(s.x[i])) + "," + num(sy(s.y[i] + s.ci_half[i])) + " ";
      for (size_t i = s.x.size(); i-- > 0;)
        pts += num(sx(s.x[i])) + "," + num(sy(s.y[i] - s.ci_half[i])) + " ";
      svg += "<polygon points='" + pts + "' fill='" + color +
             "' opacity='0.15' stroke='none'/>\n";
    }
    std::string pts;
    for (size_t i = 0; i < s.x.size(); ++i)
      pts += num(sx(s.x[i])) + "," + num(sy(s.y[i])) + " ";
    svg += "<polyline points='" + pts + "' fill='none' stroke='" + color +
           "' stroke-width='1.5'/>\n";
    if (s.x.size() == 1)
      svg += "<circle cx='" + num(sx(s.x[0])) + "' cy='" + num(sy(s.y[0])) +
             "' r='3' fill='" + color + "'/>\n";
    const double ly = top + 14 + 16 * static_cast<double>(k);
    svg += "<line x1='" + num(w - right + 8) + "' y1='" + num(ly) + "' x2='" +
           num(w - right + 28) + "' y2='" + num(ly) + "' stroke='" + color +
           "' stroke-width='2'/>\n";
    svg += "<text x='" + num(w - right + 32) + "' y='" + num(ly + 4) +
           "' font-size='11'>" + esc(s.name) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string heatmap_svg(const std::string &title, int width, int height,
                        const std::vector<double> &values,
                        const std::vector<bool> &mask) {
  const double cell = 40, left = 40, top = 40, bar_h = 16;
  const double w = left * 2 + cell * width;
  const double h = top + cell * height + 70;

  double vmax = 0.0;
  for (size_t i = 0; i < values.size(); ++i)
    if (mask.empty() || mask[i])
      vmax = std::max(vmax, values[i]);
  if (vmax == 0.0)
    vmax = 1.0;

  auto ramp = [](double f) {
    // dark violet to bright yellow
    const int r = static_cast<int>(30 + 225 * f);
    const int g = static_cast<int>(10 + 200 * f * f);
    const int b = static_cast<int>(90 + 60 * (1 - f) - 60 * f);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g,
                  std::clamp(b, 0, 255));
    return std::string(buf);
  };

  std::string svg =
      "<svg xmlns='http://www.w3.org/2000/svg' width='" + num(w) +
      "' height='" + num(h) + "' viewBox='0 0 " + num(w) + " " + num(h) +
      "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  svg += "<text x='" + num(w / 2) + "' y='22' font-size='14' "
         "text-anchor='middle' font-weight='bold'>" +
         esc(title) + "</text>\n";

  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const size_t i = static_cast<size_t>(y * width + x);
      std::string fill = "#777777";
      if (mask.empty() || mask[i])
        fill = ramp(values[i] / vmax);
      svg += "<rect x='" + num(left + cell * x) + "' y='" +
             num(top + cell * y) + "' width='" + num(cell) + "' height='" +
             num(cell) + "' fill='" + fill + "' stroke='#222'/>\n";
    }

  const double by = top + cell * height + 20;
  for (int i = 0; i < 100; ++i) {
    svg += "<rect x='" + num(left + (w - 2 * left) * i / 100.0) + "' y='" +
           num(by) + "' width='" + num((w - 2 * left) / 100.0 + 0.5) +
           "' height='" + num(bar_h) + "' fill='" + ramp(i / 99.0) +
           "' stroke='none'/>\n";
  }
  svg += "<text x='" + num(left) + "' y='" + num(by + bar_h + 14) +
         "' font-size='10'>0</text>\n";
  svg += "<text x='" + num(w - left) + "' y='" + num(by + bar_h + 14) +
         "' font-size='10' text-anchor='end'>" + num(vmax) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::string boxplot_svg(const std::string &title, const std::string &ylabel,
                        const std::vector<std::string> &labels,
                        const std::vector<std::vector<double>> &samples,
                        bool log_scale) {
  const double w = 520, h = 380, left = 70, top = 40, bottom = 50;
  auto tr = [&](double v) { return log_scale ? std::log10(std::max(v, 1e-9)) : v; };

  double lo = 0, hi = 1;
  bool first = true;
  for (const auto &s : samples)
    for (double v : s) {
      const double t = tr(v);
      if (first) {
        lo = hi = t;
        first = false;
      }
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  const double pad = (hi - lo) * 0.08 + 1e-9;
  lo -= pad;
  hi += pad;
  Scale sy{lo, hi, h - bottom, top};

  std::string svg =
      "<svg xmlns='http://www.w3.org/2000/svg' width='" + num(w) +
      "' height='" + num(h) + "' viewBox='0 0 " + num(w) + " " + num(h) +
      "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  svg += "<text x='" + num(w / 2) + "' y='20' font-size='14' "
         "text-anchor='middle' font-weight='bold'>" +
         esc(title) + "</text>\n";
  svg += "<text x='16' y='" + num(h / 2) +
         "' font-size='12' text-anchor='middle' transform='rotate(-90 16 " +
         num(h / 2) + ")'>" + esc(ylabel) +
         (log_scale ? " (log10)" : "") + "</text>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fy = lo + (hi - lo) * i / 4.0;
    svg += "<text x='" + num(left - 8) + "' y='" + num(sy(fy) + 3) +
           "' font-size='10' text-anchor='end'>" + num(fy) + "</text>\n";
    svg += "<line x1='" + num(left) + "' y1='" + num(sy(fy)) + "' x2='" +
           num(w - 30) + "' y2='" + num(sy(fy)) +
           "' stroke='#ddd' stroke-width='0.5'/>\n";
  }

  const double slot = (w - left - 30) / std::max<size_t>(samples.size(), 1);
  for (size_t k = 0; k < samples.size(); ++k) {
    std::vector<double> v;
    for (double x : samples[k])
      v.push_back(tr(x));
    std::sort(v.begin(), v.end());
    if (v.empty())
      continue;
    auto q = [&](double f) {
      const double idx = f * static_cast<double>(v.size() - 1);
      const size_t a = static_cast<size_t>(idx);
      const size_t b = std::min(a + 1, v.size() - 1);
      return v[a] + (idx - static_cast<double>(a)) * (v[b] - v[a]);
    };
    const double cx = left + slot * (static_cast<double>(k) + 0.5);
    const double bw = slot * 0.4;
    svg += "<line x1='" + num(cx) + "' y1='" + num(sy(v.front())) + "' x2='" +
           num(cx) + "' y2='" + num(sy(v.back())) + "' stroke='#333'/>\n";
    svg += "<rect x='" + num(cx - bw / 2) + "' y='" + num(sy(q(0.75))) +
           "' width='" + num(bw) + "' height='" +
           num(sy(q(0.25)) - sy(q(0.75))) +
           "' fill='#9ecae1' stroke='#333'/>\n";
    svg += "<line x1='" + num(cx - bw / 2) + "' y1='" + num(sy(q(0.5))) +
           "' x2='" + num(cx + bw / 2) + "' y2='" + num(sy(q(0.5))) +
           "' stroke='#333' stroke-width='2'/>\n";
    if (k < labels.size())
      svg += "<text x='" + num(cx) + "' y='" + num(h - bottom + 18) +
             "' font-size='11' text-anchor='middle'>" + esc(labels[k]) +
             "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

} // namespace zidlab

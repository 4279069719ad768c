#include "macrovar/svg_chart.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace macrovar::svg {

namespace {

constexpr double kMarginLeft = 62.0;
constexpr double kMarginRight = 14.0;
constexpr double kMarginTop = 28.0;
constexpr double kMarginBottom = 42.0;
constexpr double kTitleHeight = 30.0;
constexpr int kTicks = 5;

std::string num(double v, int precision = 2) {
  std::array<char, 48> buf{};
  if (std::abs(v) < 0.5 * std::pow(10.0, -precision)) v = 0.0;
  const auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, precision);
  return ec == std::errc{} ? std::string(buf.data(), end) : "0";
}

std::string tick_label(double v, double step) {
  const int digits = step >= 1.0 ? 0 : std::min(6, static_cast<int>(std::ceil(-std::log10(step))) + 1);
  if (std::abs(v) >= 1e5 || (v != 0.0 && std::abs(v) < 1e-4)) {
    std::array<char, 48> buf{};
    const auto [end, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 2);
    return ec == std::errc{} ? std::string(buf.data(), end) : "0";
  }
  return num(v, digits);
}

double nice_step(double span) {
  const double raw = span / kTicks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  const double nice = frac < 1.5 ? 1.0 : frac < 3.0 ? 2.0 : frac < 7.0 ? 5.0 : 10.0;
  return nice * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo <= 0.0) {
      const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
      lo -= pad;
      hi += pad;
    }
  }
};

void render_panel(std::string& out, const ChartPanel& panel, double ox, double oy, double w, double h) {
  Range xr, yr;
  for (const auto& line : panel.lines) {
    for (double x : line.x) xr.add(x);
    for (double y : line.y) yr.add(y);
  }
  if (panel.band) {
    for (double x : panel.band->x) xr.add(x);
    for (double y : panel.band->lower) yr.add(y);
    for (double y : panel.band->upper) yr.add(y);
  }
  if (panel.zero_line) yr.add(0.0);
  xr.finish();
  yr.finish();
  const double ystep = nice_step(yr.hi - yr.lo);
  yr.lo = std::floor(yr.lo / ystep) * ystep;
  yr.hi = std::ceil(yr.hi / ystep) * ystep;

  const double px = ox + kMarginLeft;
  const double py = oy + kMarginTop;
  const double pw = w - kMarginLeft - kMarginRight;
  const double ph = h - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return px + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return py + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  out += "<g>\n";
  out += "<text x=\"" + num(ox + w / 2) + "\" y=\"" + num(oy + 18) +
         "\" text-anchor=\"middle\" font-size=\"13\" font-weight=\"bold\">" + escape_xml(panel.title) +
         "</text>\n";
  out += "<rect x=\"" + num(px) + "\" y=\"" + num(py) + "\" width=\"" + num(pw) + "\" height=\"" +
         num(ph) + "\" fill=\"none\" stroke=\"#444\"/>\n";

  for (double v = yr.lo; v <= yr.hi + 0.5 * ystep; v += ystep) {
    const double y = sy(v);
    out += "<line x1=\"" + num(px - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(px) + "\" y2=\"" +
           num(y) + "\" stroke=\"#444\"/>\n";
    out += "<text x=\"" + num(px - 6) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\" font-size=\"10\">" + tick_label(v, ystep) + "</text>\n";
  }
  const double xstep = nice_step(xr.hi - xr.lo);
  for (double v = std::ceil(xr.lo / xstep) * xstep; v <= xr.hi + 1e-9 * xstep; v += xstep) {
    const double x = sx(v);
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(py + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(py + ph + 4) + "\" stroke=\"#444\"/>\n";
    out += "<text x=\"" + num(x) + "\" y=\"" + num(py + ph + 16) +
           "\" text-anchor=\"middle\" font-size=\"10\">" + tick_label(v, xstep) + "</text>\n";
  }
  out += "<text x=\"" + num(px + pw / 2) + "\" y=\"" + num(oy + h - 8) +
         "\" text-anchor=\"middle\" font-size=\"11\">" + escape_xml(panel.x_label) + "</text>\n";
  const double ly = py + ph / 2;
  out += "<text x=\"" + num(ox + 12) + "\" y=\"" + num(ly) + "\" text-anchor=\"middle\" font-size=\"11\"" +
         " transform=\"rotate(-90 " + num(ox + 12) + " " + num(ly) + ")\">" + escape_xml(panel.y_label) +
         "</text>\n";

  if (panel.band && !panel.band->x.empty()) {
    const auto& b = *panel.band;
    std::string pts;
    for (std::size_t k = 0; k < b.x.size(); ++k) {
      if (std::isfinite(b.x[k]) && std::isfinite(b.upper[k])) pts += num(sx(b.x[k])) + "," + num(sy(b.upper[k])) + " ";
    }
    for (std::size_t k = b.x.size(); k-- > 0;) {
      if (std::isfinite(b.x[k]) && std::isfinite(b.lower[k])) pts += num(sx(b.x[k])) + "," + num(sy(b.lower[k])) + " ";
    }
    if (!pts.empty()) pts.pop_back();
    out += "<polygon points=\"" + pts + "\" fill=\"" + escape_xml(b.color) +
           "\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
  }
  if (panel.zero_line && yr.lo <= 0.0 && yr.hi >= 0.0) {
    out += "<line x1=\"" + num(px) + "\" y1=\"" + num(sy(0.0)) + "\" x2=\"" + num(px + pw) + "\" y2=\"" +
           num(sy(0.0)) + "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  }

  double legend_y = py + 12;
  for (const auto& line : panel.lines) {
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) {
        pts.pop_back();
        out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + escape_xml(line.color) +
               "\" stroke-width=\"1.8\"/>\n";
        pts.clear();
      }
    };
    const std::size_t n = std::min(line.x.size(), line.y.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (std::isfinite(line.x[k]) && std::isfinite(line.y[k])) {
        pts += num(sx(line.x[k])) + "," + num(sy(line.y[k])) + " ";
      } else {
        flush();
      }
    }
    flush();
    if (panel.lines.size() > 1 && !line.label.empty()) {
      out += "<text x=\"" + num(px + pw - 6) + "\" y=\"" + num(legend_y) +
             "\" text-anchor=\"end\" font-size=\"10\" fill=\"" + escape_xml(line.color) + "\">" +
             escape_xml(line.label) + "</text>\n";
      legend_y += 12;
    }
  }
  out += "</g>\n";
}

}  // namespace

std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render(const std::vector<ChartPanel>& panels, std::string_view title, const GridLayout& layout) {
  const int columns = std::max(1, layout.columns);
  const int rows = static_cast<int>((panels.size() + static_cast<std::size_t>(columns) - 1) /
                                    static_cast<std::size_t>(columns));
  const double width = static_cast<double>(columns * layout.panel_width);
  const double height = kTitleHeight + static_cast<double>(std::max(rows, 1) * layout.panel_height);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width, 0) + "\" height=\"" +
         num(height, 0) + "\" viewBox=\"0 0 " + num(width, 0) + " " + num(height, 0) +
         "\" font-family=\"sans-serif\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(width / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" +
         escape_xml(title) + "</text>\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const int r = static_cast<int>(k) / columns;
    const int c = static_cast<int>(k) % columns;
    render_panel(out, panels[k], c * layout.panel_width, kTitleHeight + r * layout.panel_height,
                 layout.panel_width, layout.panel_height);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace macrovar::svg

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace macrovar::svg {

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f4e79";
};

// Shaded region between lower and upper, drawn beneath the lines.
struct BandSeries {
  std::vector<double> x;
  std::vector<double> lower;
  std::vector<double> upper;
  std::string color = "#9ecae1";
};

struct ChartPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<LineSeries> lines;
  std::optional<BandSeries> band;
  bool zero_line = true;
};

struct GridLayout {
  int columns = 1;
  int panel_width = 360;
  int panel_height = 240;
};

// Self-contained SVG document laying panels out row by row. Non-finite
// points are skipped and split the polyline.
std::string render(const std::vector<ChartPanel>& panels, std::string_view title,
                   const GridLayout& layout = {});

// Escapes &, <, >, ", ' for text nodes and attributes.
std::string escape_xml(std::string_view text);

}  // namespace macrovar::svg

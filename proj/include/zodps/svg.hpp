#pragma once

#include <string>
#include <vector>

namespace zodps::svg {

/// One polyline, optionally with a shaded band (e.g. mean +- sd across seeds).
struct Series {
    std::string label;
    std::string color;  // CSS color, e.g. "#1f77b4"
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> band_low;   // empty, or one value per x
    std::vector<double> band_high;  // empty, or one value per x
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;  // falls back to linear if any value is <= 0
    int width = 860;
    int height = 540;
};

/// Self-contained SVG document: axes, ticks, grid, legend, one polyline per
/// series, translucent band polygons.  Deterministic for identical inputs.
std::string render_line_chart(const ChartSpec& spec, const std::vector<Series>& series);

void write_chart(const std::string& path, const ChartSpec& spec,
                 const std::vector<Series>& series);

/// Color cycle used by the emitters (index wraps around).
std::string series_color(std::size_t index);

} // namespace zodps::svg

#pragma once

#include <string>
#include <vector>

namespace leosim::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Multi-series line chart with axes and a small legend.
std::string line_chart(const std::vector<Series>& series, const std::string& title,
                       const std::string& x_label, const std::string& y_label);

/// Value-labelled heat map (light = low, dark = high).
std::string heat_map(const std::vector<std::vector<double>>& cells,
                     const std::vector<std::string>& row_labels,
                     const std::vector<std::string>& col_labels, const std::string& title);

void write(const std::string& path, const std::string& svg_text);

}  // namespace leosim::svg

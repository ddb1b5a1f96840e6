#include "leosim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace leosim::svg {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 160;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#d1495b", "#30638e", "#edae49", "#00798c", "#6a4c93", "#55a630"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

std::string line_chart(const std::vector<Series>& series, const std::string& title,
                       const std::string& x_label, const std::string& y_label) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const auto& s : series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0;
    if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    double plot_w = kWidth - kMarginLeft - kMarginRight;
    double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kMarginTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-size=\"16\">" + title + "</text>\n";

    // Axes with 5 ticks each.
    out += "<g stroke=\"#444\" stroke-width=\"1\">\n";
    out += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(kMarginTop) + "\" x2=\"" +
           fmt(kMarginLeft) + "\" y2=\"" + fmt(kMarginTop + plot_h) + "\"/>\n";
    out += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(kMarginTop + plot_h) + "\" x2=\"" +
           fmt(kMarginLeft + plot_w) + "\" y2=\"" + fmt(kMarginTop + plot_h) + "\"/>\n";
    out += "</g>\n";
    for (int i = 0; i <= 4; ++i) {
        double fx = xmin + (xmax - xmin) * i / 4.0;
        double fy = ymin + (ymax - ymin) * i / 4.0;
        out += "<text x=\"" + fmt(px(fx)) + "\" y=\"" + fmt(kMarginTop + plot_h + 18) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + fmt(fx) + "</text>\n";
        out += "<text x=\"" + fmt(kMarginLeft - 8) + "\" y=\"" + fmt(py(fy) + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + fmt(fy) + "</text>\n";
        out += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(py(fy)) + "\" x2=\"" +
               fmt(kMarginLeft + plot_w) + "\" y2=\"" + fmt(py(fy)) +
               "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    }
    out += "<text x=\"" + std::to_string(kMarginLeft + static_cast<int>(plot_w) / 2) + "\" y=\"" +
           std::to_string(kHeight - 12) + "\" text-anchor=\"middle\" font-size=\"12\">" + x_label +
           "</text>\n";
    out += "<text x=\"18\" y=\"" + std::to_string(kMarginTop + static_cast<int>(plot_h) / 2) +
           "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           std::to_string(kMarginTop + static_cast<int>(plot_h) / 2) + ")\">" + y_label +
           "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& ser = series[s];
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string points;
        for (std::size_t i = 0; i < ser.x.size(); ++i)
            points += fmt(px(ser.x[i])) + "," + fmt(py(ser.y[i])) + " ";
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        double ly = kMarginTop + 16.0 * static_cast<double>(s);
        out += "<line x1=\"" + fmt(kWidth - kMarginRight + 12) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
               fmt(kWidth - kMarginRight + 34) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fmt(kWidth - kMarginRight + 40) + "\" y=\"" + fmt(ly + 4) +
               "\" font-size=\"12\">" + ser.label + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string heat_map(const std::vector<std::vector<double>>& cells,
                     const std::vector<std::string>& row_labels,
                     const std::vector<std::string>& col_labels, const std::string& title) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& row : cells)
        for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi == lo) hi = lo + 1.0;

    std::size_t rows = cells.size();
    std::size_t cols = rows > 0 ? cells.front().size() : 0;
    int cell_w = 92, cell_h = 52, left = 110, top = 60;
    int width = left + cell_w * static_cast<int>(cols) + 30;
    int height = top + cell_h * static_cast<int>(rows) + 30;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + std::to_string(width / 2) +
           "\" y=\"26\" text-anchor=\"middle\" font-size=\"15\">" + title + "</text>\n";
    for (std::size_t c = 0; c < cols; ++c)
        out += "<text x=\"" + std::to_string(left + static_cast<int>(c) * cell_w + cell_w / 2) +
               "\" y=\"" + std::to_string(top - 8) +
               "\" font-size=\"12\" text-anchor=\"middle\">" + col_labels[c] + "</text>\n";
    for (std::size_t r = 0; r < rows; ++r) {
        out += "<text x=\"" + std::to_string(left - 10) + "\" y=\"" +
               std::to_string(top + static_cast<int>(r) * cell_h + cell_h / 2 + 4) +
               "\" font-size=\"12\" text-anchor=\"end\">" + row_labels[r] + "</text>\n";
        for (std::size_t c = 0; c < cols; ++c) {
            double f = (cells[r][c] - lo) / (hi - lo);
            int red = 255;
            int other = static_cast<int>(std::lround(235.0 * (1.0 - f))) + 20;
            char color[16];
            std::snprintf(color, sizeof(color), "#%02x%02x%02x", red, other, other);
            int x = left + static_cast<int>(c) * cell_w;
            int y = top + static_cast<int>(r) * cell_h;
            out += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                   "\" width=\"" + std::to_string(cell_w) + "\" height=\"" +
                   std::to_string(cell_h) + "\" fill=\"" + color +
                   "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
            out += "<text x=\"" + std::to_string(x + cell_w / 2) + "\" y=\"" +
                   std::to_string(y + cell_h / 2 + 4) +
                   "\" font-size=\"12\" text-anchor=\"middle\">" + fmt(cells[r][c]) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

void write(const std::string& path, const std::string& svg_text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write svg: " + path);
    out << svg_text;
}

}  // namespace leosim::svg

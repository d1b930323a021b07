#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

// Minimal static SVG line charts. Decorative output only; nothing in the
// library reads these back.

namespace pigvent::svg {

struct Series {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<double> values;
};

struct Band {
    double low = 0.0;
    double high = 0.0;
    std::string color = "#dff0d8";
};

struct Chart {
    std::string title;
    std::string y_label;
    std::vector<Series> series;
    std::vector<Band> bands;
    int width = 900;
    int height = 300;
};

namespace detail {

inline std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace detail

inline void write_chart_group(std::ostream& out, const Chart& chart, int y_offset)
{
    const double margin_l = 60, margin_r = 20, margin_t = 30, margin_b = 20;
    const double plot_w = chart.width - margin_l - margin_r;
    const double plot_h = chart.height - margin_t - margin_b;

    double lo = 1e300, hi = -1e300;
    std::size_t n = 0;
    for (const auto& s : chart.series) {
        n = std::max(n, s.values.size());
        for (double v : s.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    for (const auto& b : chart.bands) {
        lo = std::min(lo, b.low);
        hi = std::max(hi, b.high);
    }
    if (n < 2 || hi <= lo) {
        hi = lo + 1;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const auto x_at = [&](std::size_t i) {
        return margin_l + plot_w * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    const auto y_at = [&](double v) {
        return y_offset + margin_t + plot_h * (1.0 - (v - lo) / (hi - lo));
    };

    out << "<g>\n";
    out << "<text x=\"" << margin_l << "\" y=\"" << y_offset + 20
        << "\" font-size=\"14\" font-family=\"sans-serif\">" << chart.title << "</text>\n";
    for (const auto& b : chart.bands) {
        const double y1 = y_at(b.high), y2 = y_at(b.low);
        out << "<rect x=\"" << margin_l << "\" y=\"" << detail::num(y1) << "\" width=\""
            << detail::num(plot_w) << "\" height=\"" << detail::num(y2 - y1) << "\" fill=\""
            << b.color << "\"/>\n";
    }
    // frame and min/max ticks
    out << "<rect x=\"" << margin_l << "\" y=\"" << y_offset + margin_t << "\" width=\""
        << detail::num(plot_w) << "\" height=\"" << detail::num(plot_h)
        << "\" fill=\"none\" stroke=\"#999\"/>\n";
    out << "<text x=\"5\" y=\"" << detail::num(y_at(hi - pad)) << "\" font-size=\"11\" "
        << "font-family=\"sans-serif\">" << detail::num(hi - pad) << "</text>\n";
    out << "<text x=\"5\" y=\"" << detail::num(y_at(lo + pad)) << "\" font-size=\"11\" "
        << "font-family=\"sans-serif\">" << detail::num(lo + pad) << "</text>\n";

    double legend_x = margin_l + 10;
    for (const auto& s : chart.series) {
        if (s.values.size() < 2)
            continue;
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < s.values.size(); ++i)
            out << detail::num(x_at(i)) << ',' << detail::num(y_at(s.values[i])) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << detail::num(legend_x) << "\" y=\"" << y_offset + margin_t + 14
            << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"" << s.color << "\">"
            << s.label << "</text>\n";
        legend_x += 130;
    }
    out << "</g>\n";
}

// Stacks the given charts vertically into one SVG document.
inline void write_charts(const std::vector<Chart>& charts, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write chart file: " + path.string());
    int width = 0, height = 0;
    for (const auto& c : charts) {
        width = std::max(width, c.width);
        height += c.height;
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    int y = 0;
    for (const auto& c : charts) {
        write_chart_group(out, c, y);
        y += c.height;
    }
    out << "</svg>\n";
}

}  // namespace pigvent::svg

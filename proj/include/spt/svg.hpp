#pragma once

// Minimal SVG line charts: polyline curves, marker-only series, labelled
// vertical rules, axes with round-number ticks, and a legend.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace spt {

struct PlotSeries {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
    bool markers = false;  // circles instead of a connected line
    bool dashed = false;
};

struct PlotRule {
    double x = 0.0;
    std::string label;
};

namespace detail {

inline std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

inline double nice_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    if (frac <= 1.0) return mag;
    if (frac <= 2.0) return 2.0 * mag;
    if (frac <= 5.0) return 5.0 * mag;
    return 10.0 * mag;
}

}  // namespace detail

inline std::string render_line_chart(const std::string& title, const std::string& x_label,
                                     const std::string& y_label,
                                     const std::vector<PlotSeries>& series,
                                     const std::vector<PlotRule>& rules = {},
                                     int width = 760, int height = 520) {
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    bool first = true;
    for (const auto& s : series)
        for (const auto& [px, py] : s.points) {
            if (!std::isfinite(px) || !std::isfinite(py)) continue;
            if (first) {
                x_min = x_max = px;
                y_min = y_max = py;
                first = false;
            } else {
                x_min = std::min(x_min, px);
                x_max = std::max(x_max, px);
                y_min = std::min(y_min, py);
                y_max = std::max(y_max, py);
            }
        }
    if (x_max <= x_min) x_max = x_min + 1.0;
    if (y_max <= y_min) y_max = y_min + 1.0;
    const double x_pad = 0.04 * (x_max - x_min), y_pad = 0.06 * (y_max - y_min);
    x_min -= x_pad; x_max += x_pad;
    y_min -= y_pad; y_max += y_pad;

    const double ml = 64, mr = 16, mt = 40, mb = 48;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto sx = [&](double v) { return ml + (v - x_min) / (x_max - x_min) * pw; };
    auto sy = [&](double v) { return mt + ph - (v - y_min) / (y_max - y_min) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + detail::fixed2(width / 2.0) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           title + "</text>\n";

    // gridlines and ticks
    const double xs = detail::nice_step(x_max - x_min);
    const double ys = detail::nice_step(y_max - y_min);
    out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">\n";
    for (double v = std::ceil(x_min / xs) * xs; v <= x_max + 1e-12; v += xs) {
        const double px = sx(v);
        out += "<line x1=\"" + detail::fixed2(px) + "\" y1=\"" + detail::fixed2(mt) +
               "\" x2=\"" + detail::fixed2(px) + "\" y2=\"" + detail::fixed2(mt + ph) +
               "\" stroke=\"#eee\"/>\n";
        out += "<text x=\"" + detail::fixed2(px) + "\" y=\"" + detail::fixed2(mt + ph + 16) +
               "\" text-anchor=\"middle\">" + detail::tick_label(v) + "</text>\n";
    }
    for (double v = std::ceil(y_min / ys) * ys; v <= y_max + 1e-12; v += ys) {
        const double py = sy(v);
        out += "<line x1=\"" + detail::fixed2(ml) + "\" y1=\"" + detail::fixed2(py) +
               "\" x2=\"" + detail::fixed2(ml + pw) + "\" y2=\"" + detail::fixed2(py) +
               "\" stroke=\"#eee\"/>\n";
        out += "<text x=\"" + detail::fixed2(ml - 6) + "\" y=\"" + detail::fixed2(py + 4) +
               "\" text-anchor=\"end\">" + detail::tick_label(v) + "</text>\n";
    }
    out += "</g>\n";
    out += "<rect x=\"" + detail::fixed2(ml) + "\" y=\"" + detail::fixed2(mt) + "\" width=\"" +
           detail::fixed2(pw) + "\" height=\"" + detail::fixed2(ph) +
           "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (const auto& rule : rules) {
        if (rule.x < x_min || rule.x > x_max) continue;
        const double px = sx(rule.x);
        out += "<line x1=\"" + detail::fixed2(px) + "\" y1=\"" + detail::fixed2(mt) +
               "\" x2=\"" + detail::fixed2(px) + "\" y2=\"" + detail::fixed2(mt + ph) +
               "\" stroke=\"#999\" stroke-dasharray=\"3,3\"/>\n";
        out += "<text x=\"" + detail::fixed2(px + 3) + "\" y=\"" + detail::fixed2(mt + 12) +
               "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#666\">" + rule.label +
               "</text>\n";
    }

    for (const auto& s : series) {
        if (s.markers) {
            for (const auto& [px, py] : s.points) {
                if (!std::isfinite(px) || !std::isfinite(py)) continue;
                out += "<circle cx=\"" + detail::fixed2(sx(px)) + "\" cy=\"" +
                       detail::fixed2(sy(py)) + "\" r=\"2.5\" fill=\"" + s.color + "\"/>\n";
            }
        } else {
            std::string pts;
            for (const auto& [px, py] : s.points) {
                if (!std::isfinite(px) || !std::isfinite(py)) continue;
                pts += detail::fixed2(sx(px)) + "," + detail::fixed2(sy(py)) + " ";
            }
            out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.6\"" +
                   (s.dashed ? " stroke-dasharray=\"6,3\"" : "") + " points=\"" + pts +
                   "\"/>\n";
        }
    }

    // legend
    double ly = mt + 14;
    out += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (const auto& s : series) {
        const double lx = ml + 12;
        if (s.markers)
            out += "<circle cx=\"" + detail::fixed2(lx + 9) + "\" cy=\"" +
                   detail::fixed2(ly - 4) + "\" r=\"2.5\" fill=\"" + s.color + "\"/>\n";
        else
            out += "<line x1=\"" + detail::fixed2(lx) + "\" y1=\"" + detail::fixed2(ly - 4) +
                   "\" x2=\"" + detail::fixed2(lx + 18) + "\" y2=\"" + detail::fixed2(ly - 4) +
                   "\" stroke=\"" + s.color + "\" stroke-width=\"2\"" +
                   (s.dashed ? " stroke-dasharray=\"6,3\"" : "") + "/>\n";
        out += "<text x=\"" + detail::fixed2(lx + 24) + "\" y=\"" + detail::fixed2(ly) + "\">" +
               s.label + "</text>\n";
        ly += 16;
    }
    out += "</g>\n";

    out += "<text x=\"" + detail::fixed2(ml + pw / 2.0) + "\" y=\"" +
           detail::fixed2(height - 10.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + x_label +
           "</text>\n";
    out += "<text x=\"16\" y=\"" + detail::fixed2(mt + ph / 2.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           detail::fixed2(mt + ph / 2.0) + ")\">" + y_label + "</text>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace spt

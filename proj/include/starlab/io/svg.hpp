#pragma once

// Minimal deterministic SVG writer: log-log scatter of the fit samples plus
// the fitted line. Byte output depends only on the fit values.

#include <cmath>
#include <string>
#include <vector>

#include "starlab/io/format.hpp"
#include "starlab/rates.hpp"

namespace starlab::io {

inline std::string render_rate_chart(const RateFit& fit, const std::string& x_label) {
    const double width = 640.0, height = 480.0;
    const double left = 70.0, right = 20.0, top = 44.0, bottom = 56.0;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    double lx_min = std::log10(fit.x.front()), lx_max = lx_min;
    double ly_min = std::log10(fit.y.front()), ly_max = ly_min;
    for (std::size_t i = 0; i < fit.x.size(); ++i) {
        lx_min = std::min(lx_min, std::log10(fit.x[i]));
        lx_max = std::max(lx_max, std::log10(fit.x[i]));
        ly_min = std::min(ly_min, std::log10(fit.y[i]));
        ly_max = std::max(ly_max, std::log10(fit.y[i]));
    }
    const double pad_x = 0.06 * std::max(lx_max - lx_min, 0.5);
    const double pad_y = 0.06 * std::max(ly_max - ly_min, 0.5);
    lx_min -= pad_x; lx_max += pad_x;
    ly_min -= pad_y; ly_max += pad_y;

    auto px = [&](double lx) { return left + (lx - lx_min) / (lx_max - lx_min) * plot_w; };
    auto py = [&](double ly) { return top + (ly_max - ly) / (ly_max - ly_min) * plot_h; };
    auto num = [](double v) { return format_double(v, 6); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    s += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_w) +
         "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"#444\"/>\n";

    // decade ticks
    for (int k = static_cast<int>(std::ceil(lx_min)); k <= static_cast<int>(std::floor(lx_max)); ++k) {
        const double x = px(k);
        s += "<line x1=\"" + num(x) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" + num(x) +
             "\" y2=\"" + num(top + plot_h + 6) + "\" stroke=\"#444\"/>\n";
        s += "<text x=\"" + num(x) + "\" y=\"" + num(top + plot_h + 20) +
             "\" font-size=\"12\" text-anchor=\"middle\">1e" + std::to_string(k) + "</text>\n";
    }
    for (int k = static_cast<int>(std::ceil(ly_min)); k <= static_cast<int>(std::floor(ly_max)); ++k) {
        const double y = py(k);
        s += "<line x1=\"" + num(left - 6) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left) +
             "\" y2=\"" + num(y) + "\" stroke=\"#444\"/>\n";
        s += "<text x=\"" + num(left - 10) + "\" y=\"" + num(y + 4) +
             "\" font-size=\"12\" text-anchor=\"end\">1e" + std::to_string(k) + "</text>\n";
    }

    // fitted line across the padded range
    const double y1 = std::log10(fit.amplitude) + fit.exponent * lx_min;
    const double y2 = std::log10(fit.amplitude) + fit.exponent * lx_max;
    s += "<line x1=\"" + num(px(lx_min)) + "\" y1=\"" + num(py(y1)) + "\" x2=\"" +
         num(px(lx_max)) + "\" y2=\"" + num(py(y2)) + "\" stroke=\"#c33\" stroke-width=\"1.5\"/>\n";

    for (std::size_t i = 0; i < fit.x.size(); ++i) {
        s += "<circle cx=\"" + num(px(std::log10(fit.x[i]))) + "\" cy=\"" +
             num(py(std::log10(fit.y[i]))) + "\" r=\"3.5\" fill=\"#247\"/>\n";
    }

    s += "<text x=\"" + num(left) + "\" y=\"24\" font-size=\"15\">" + fit.observable + " vs " +
         x_label + "</text>\n";
    s += "<text x=\"" + num(width - right) + "\" y=\"24\" font-size=\"14\" text-anchor=\"end\">"
         "slope = " + format_double(fit.exponent, 4) + ", R^2 = " +
         format_double(fit.r_squared, 6) + "</text>\n";
    s += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"" + num(height - 12) +
         "\" font-size=\"13\" text-anchor=\"middle\">" + x_label + "</text>\n";
    s += "</svg>\n";
    return s;
}

inline std::string chart_file_name(const std::string& observable) {
    std::string out = "rate_";
    for (char ch : observable)
        out += (std::isalnum(static_cast<unsigned char>(ch)) != 0) ? ch : '_';
    return out;
}

}  // namespace starlab::io

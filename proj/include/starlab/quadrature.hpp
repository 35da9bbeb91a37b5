#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace starlab {

/// Composite Simpson rule on uniformly spaced samples. An odd interval count
/// is closed with the 3/8 rule on the last three intervals.
inline double simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 3) throw std::invalid_argument("simpson: need at least 3 samples");
    std::size_t intervals = n - 1;
    std::size_t last = n - 1;
    double tail = 0.0;
    if (intervals % 2 != 0) {
        if (n < 4) throw std::invalid_argument("simpson: odd interval count needs >= 4 samples");
        tail = 3.0 * h / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
        last = n - 4;
    }
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i < last; i += 2) odd += f[i];
    for (std::size_t i = 2; i < last; i += 2) even += f[i];
    return h / 3.0 * (f[0] + f[last] + 4.0 * odd + 2.0 * even) + tail;
}

/// Cumulative integral on a uniform grid, fourth order. Even nodes accumulate
/// composite Simpson pairs, so the running integral telescopes to exactly the
/// composite Simpson value there; odd nodes add a cubic half-panel
/// correction. out[0] = 0, out[i] ~ Int_{x0}^{xi} f.
inline std::vector<double> cumulative_integral(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 4) throw std::invalid_argument("cumulative_integral: need at least 4 samples");
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k + 2 < n; k += 2)
        out[k + 2] = out[k] + h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
    const double w = h / 24.0;
    for (std::size_t j = 1; j < n; j += 2) {
        if (j + 2 < n)
            out[j] = out[j - 1] + w * (9.0 * f[j - 1] + 19.0 * f[j] - 5.0 * f[j + 1] + f[j + 2]);
        else
            out[j] = out[j - 1] + w * (f[j - 3] - 5.0 * f[j - 2] + 19.0 * f[j - 1] + 9.0 * f[j]);
    }
    return out;
}

}  // namespace starlab

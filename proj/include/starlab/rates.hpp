#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "starlab/errors.hpp"

namespace starlab {

/// Least-squares power law y = amplitude * x^exponent, fitted on
/// (log x, log y).
struct RateFit {
    std::string observable;
    std::vector<double> x, y;
    double exponent = 0.0;
    double amplitude = 0.0;
    double r_squared = 0.0;
    std::vector<double> residuals;  ///< log y - fitted, per point
};

inline RateFit fit_power_law(std::span<const double> x, std::span<const double> y,
                             const std::string& observable) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("fit_power_law: need at least 3 sample pairs");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0))
            throw FitDomainError("fit_power_law: nonpositive abscissa at x = " +
                                     std::to_string(x[i]),
                                 x[i]);
        if (!(y[i] > 0.0))
            throw FitDomainError("fit_power_law: nonpositive " + observable + " sample at x = " +
                                     std::to_string(x[i]),
                                 x[i]);
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_power_law: degenerate abscissas");

    RateFit fit;
    fit.observable = observable;
    fit.x.assign(x.begin(), x.end());
    fit.y.assign(y.begin(), y.end());
    fit.exponent = sxy / sxx;
    fit.amplitude = std::exp(my - fit.exponent * mx);
    fit.residuals.resize(n);
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        fit.residuals[i] = ly[i] - (my + fit.exponent * (lx[i] - mx));
        ss_res += fit.residuals[i] * fit.residuals[i];
    }
    fit.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    if (!std::isfinite(fit.exponent))
        throw std::invalid_argument("fit_power_law: non-finite exponent");
    return fit;
}

}  // namespace starlab

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace starlab {

/// Brent's method on a sign-changing bracket [a, b]. Converges to
/// |b - a| <= xtol + rtol * |x| or |f| == 0.
inline double brent(const std::function<double(double)>& f, double a, double b,
                    double fa, double fb, double xtol = 0.0, double rtol = 1e-15,
                    int max_iter = 200) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::invalid_argument("brent: endpoints do not bracket a root");
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * rtol * std::abs(b) + 0.5 * xtol;
        const double mid = 0.5 * (c - b);
        if (std::abs(mid) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, qd;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * mid * s;
                qd = 1.0 - s;
            } else {
                const double qa = fa / fc, r = fb / fc;
                p = s * (2.0 * mid * qa * (qa - r) - (b - a) * (r - 1.0));
                qd = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) qd = -qd;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * mid * qd - std::abs(tol * qd), std::abs(e * qd))) {
                e = d;
                d = p / qd;
            } else {
                d = mid;
                e = d;
            }
        } else {
            d = mid;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (mid > 0.0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
    }
    return b;
}

inline double find_root(const std::function<double(double)>& f, double a, double b,
                        double xtol = 0.0, double rtol = 1e-15, int max_iter = 200) {
    return brent(f, a, b, f(a), f(b), xtol, rtol, max_iter);
}

}  // namespace starlab

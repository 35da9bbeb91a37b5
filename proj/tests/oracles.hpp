#pragma once

// Test-side oracles, deliberately independent of the library's evaluation
// paths: adaptive quadrature of the momentum-space integrals, and a
// fixed-step Lane-Emden integrator for the polytrope nondimensionalization.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "starlab/params.hpp"

namespace oracles {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double m,
                                   double b, double fa, double fm, double fb, double whole,
                                   double eps, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double rel_tol = 1e-13) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double eps = rel_tol * std::max(std::abs(whole), 1e-300);
    return adaptive_simpson_rec(f, a, 0.5 * (a + b), b, fa, fm, fb, whole, eps, 60);
}

/// q/(8 pi^3) Int_{|p|<eta} (sqrt(c^2 p^2 + m^2 c^4) - m c^2) dp by adaptive
/// quadrature of the rationalized radial integrand.
inline double kinetic_density_quadrature(double rho, const starlab::ModelParams& p) {
    const double eta = std::cbrt(6.0 * starlab::kPi * starlab::kPi * rho / p.q);
    const double mc2 = p.m * p.c * p.c;
    auto integrand = [&](double k) {
        const double ck = p.c * k;
        return k * k * (ck * ck / (std::sqrt(ck * ck + mc2 * mc2) + mc2));
    };
    return p.q / (2.0 * starlab::kPi * starlab::kPi) * adaptive_simpson(integrand, 0.0, eta);
}

/// q/(8 pi^3) Int_{|p|<eta} dp / sqrt(c^2 p^2 + m^2 c^4) by adaptive quadrature.
inline double kinetic_density_bar_quadrature(double rho, const starlab::ModelParams& p) {
    const double eta = std::cbrt(6.0 * starlab::kPi * starlab::kPi * rho / p.q);
    const double mc2 = p.m * p.c * p.c;
    auto integrand = [&](double k) {
        const double ck = p.c * k;
        return k * k / std::sqrt(ck * ck + mc2 * mc2);
    };
    return p.q / (2.0 * starlab::kPi * starlab::kPi) * adaptive_simpson(integrand, 0.0, eta);
}

struct LaneEmden {
    double xi1;    ///< first zero of theta
    double omega;  ///< -xi1^2 theta'(xi1)
};

/// Fixed-step RK4 integration of theta'' + (2/xi) theta' + theta^(3/2) = 0
/// from the series start, with bisection refinement of the first zero.
inline LaneEmden lane_emden_polytrope_3half() {
    auto rhs = [](double xi, double th, double dth, double& d1, double& d2) {
        d1 = dth;
        d2 = -std::pow(std::max(th, 0.0), 1.5) - 2.0 * dth / xi;
    };
    auto rk4 = [&](double xi, double& th, double& dth, double h) {
        double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
        rhs(xi, th, dth, k1a, k1b);
        rhs(xi + 0.5 * h, th + 0.5 * h * k1a, dth + 0.5 * h * k1b, k2a, k2b);
        rhs(xi + 0.5 * h, th + 0.5 * h * k2a, dth + 0.5 * h * k2b, k3a, k3b);
        rhs(xi + h, th + h * k3a, dth + h * k3b, k4a, k4b);
        th += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        dth += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    };

    double xi = 1e-6;
    double th = 1.0 - xi * xi / 6.0 + xi * xi * xi * xi / 80.0;
    double dth = -xi / 3.0 + xi * xi * xi / 20.0;
    const double h = 1e-4;
    double th_prev = th, dth_prev = dth, xi_prev = xi;
    for (long i = 0; i < 200000; ++i) {
        th_prev = th;
        dth_prev = dth;
        xi_prev = xi;
        rk4(xi, th, dth, h);
        xi += h;
        if (th <= 0.0) break;
    }
    if (th > 0.0) throw std::runtime_error("lane_emden: no zero before the step budget");

    // bisection on the step size from the last positive state
    double lo = 0.0, hi = h;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        double t = th_prev, d = dth_prev;
        rk4(xi_prev, t, d, mid);
        if (t > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double t = th_prev, d = dth_prev;
    const double step = 0.5 * (lo + hi);
    rk4(xi_prev, t, d, step);
    const double xi1 = xi_prev + step;
    return {xi1, -xi1 * xi1 * d};
}

}  // namespace oracles

#pragma once

// Scalar kinetic kernels of the star model.
//
// The relativistic kinetic symbol is T_c(p) = sqrt(c^2 p^2 + m^2 c^4) - m c^2,
// its nonrelativistic limit is p^2 / 2m. Integrating the symbol (and two
// companions) over the Fermi ball |p| < eta gives the energy densities
//
//   j(rho)      = q/(8 pi^3) * Int_{|p|<eta} T_c(p) dp
//   jbar(rho)   = q/(8 pi^3) * Int_{|p|<eta} 1 / sqrt(c^2 p^2 + m^2 c^4) dp
//   defect(rho) = j + m^2 c^4 jbar - m c^2 rho
//               = q/(8 pi^3) * Int_{|p|<eta} T_c(p)^2 / sqrt(c^2 p^2 + m^2 c^4) dp
//
// All three reduce to closed forms in t = eta / (m c):
//
//   j      = (q c (mc)^4 / 16 pi^2) * F(t),   F = t(2t^2+1)sqrt(1+t^2) - asinh t - (8/3)t^3
//   jbar   = (q (mc)^2 / 4 pi^2 c)  * G(t),   G = t sqrt(1+t^2) - asinh t
//   defect = (q c (mc)^4 / 16 pi^2) * Fd(t),  Fd = t(2t^2+5)sqrt(1+t^2) - 5 asinh t - (16/3)t^3
//
// F ~ (4/5)t^5, G ~ (2/3)t^3 and Fd ~ (2/7)t^7 as t -> 0, so the closed forms
// lose all significant digits for small t. Below the switch point each kernel
// is evaluated from its Taylor series instead; the switch is placed where
// series and closed form agree to better than 1e-13.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "starlab/errors.hpp"
#include "starlab/params.hpp"

namespace starlab {

namespace detail {

// Series switch point: below it the 26-term series is exact to round-off,
// above it the closed forms carry at most ~1e-13 relative cancellation.
constexpr double kSeriesSwitch = 0.5;

// Taylor coefficients of F(t) = sum f_k t^(2k+5).
constexpr double kSeriesF[26] = {
    0.8, -0.14285714285714285, 0.05555555555555555, -0.028409090909090908,
    0.016826923076923076, -0.0109375, 0.007582720588235294, -0.005512438322368421,
    0.00415620349702381, -0.0032255753226902175, 0.0025628662109375, -0.002076396235713252,
    0.0017101353612439386, -0.001428396471085087, 0.001207644289190119, -0.0010318889149597713,
    0.0008899836826163369, -0.0007739815359505323, 0.0006781032070426679, -0.0005980712587696089,
    0.0005306695772257323, -0.0004734455367415262, 0.0004245046272203302, -0.0003823663002536063,
    0.00034586114026712993, -0.00031405642701878893};

// Taylor coefficients of G(t) = sum g_k t^(2k+3).
constexpr double kSeriesG[26] = {
    0.6666666666666666, -0.2, 0.10714285714285714, -0.06944444444444445,
    0.04971590909090909, -0.03786057692307692, 0.030078125, -0.024643841911764705,
    0.02067164370888158, -0.017663864862351192, 0.015321482782778532, -0.013455047607421874,
    0.011939278355351201, -0.010688346007774616, 0.009641676179824336, -0.008755421096628363,
    0.007997139090938228, -0.007342365381584779, 0.006772338439567158, -0.006272454665144678,
    0.005831194773003687, -0.005439363166563756, 0.005089539519971406, -0.004775677056228715,
    0.004492804027979874, -0.004236798968272342};

// Taylor coefficients of Fd(t) = sum d_k t^(2k+7).
constexpr double kSeriesDefect[26] = {
    0.2857142857142857, -0.2222222222222222, 0.17045454545454544, -0.1346153846153846,
    0.109375, -0.09099264705882353, 0.0771741365131579, -0.06649925595238096,
    0.05806035580842391, -0.05125732421875, 0.04568071718569155, -0.04104324866985452,
    0.03713830824821226, -0.033814040097323333, 0.03095666744879314, -0.028479477843722782,
    0.026315372222318098, -0.024411715453536046, 0.02272670783324514, -0.021226783089029293,
    0.019884712543144098, -0.01867820359769453, 0.01758884981166589, -0.016601334732822236,
    0.015702821350939446, -0.014882479026952748};

inline double horner_even(const double (&c)[26], double t2) {
    double acc = 0.0;
    for (int k = 25; k >= 0; --k) acc = acc * t2 + c[k];
    return acc;
}

inline double kernel_f(double t) {
    if (t <= kSeriesSwitch) {
        const double t2 = t * t;
        return horner_even(kSeriesF, t2) * t2 * t2 * t;
    }
    const double s = std::sqrt(1.0 + t * t);
    return t * (2.0 * t * t + 1.0) * s - std::asinh(t) - (8.0 / 3.0) * t * t * t;
}

inline double kernel_g(double t) {
    if (t <= kSeriesSwitch) {
        const double t2 = t * t;
        return horner_even(kSeriesG, t2) * t2 * t;
    }
    const double s = std::sqrt(1.0 + t * t);
    return t * s - std::asinh(t);
}

inline double kernel_defect(double t) {
    if (t <= kSeriesSwitch) {
        const double t2 = t * t;
        const double t4 = t2 * t2;
        return horner_even(kSeriesDefect, t2) * t4 * t2 * t;
    }
    const double s = std::sqrt(1.0 + t * t);
    return t * (2.0 * t * t + 5.0) * s - 5.0 * std::asinh(t) - (16.0 / 3.0) * t * t * t;
}

}  // namespace detail

/// Kinetic symbol T_c(p) >= 0. Evaluated in the rationalized form
/// c^2 p^2 / (sqrt(c^2 p^2 + m^2 c^4) + m c^2), which keeps full precision
/// for c p << m c^2 where the naive subtraction cancels completely.
inline double dispersion(double p, const ModelParams& params) {
    params.validate();
    if (!(p >= 0.0)) throw std::domain_error("dispersion: momentum must be >= 0");
    if (params.limit_model()) return p * p / (2.0 * params.m);
    const double cp = params.c * p;
    const double mc2 = params.m * params.c * params.c;
    return cp * cp / (std::hypot(cp, mc2) + mc2);
}

/// Inverts the kinetic symbol at a local chemical potential w >= 0:
/// returns the density rho with dispersion(eta(rho)) = w. Callers must apply
/// the positive part before calling; negative w is a domain error.
inline double inverse_dispersion(double w, const ModelParams& params) {
    params.validate();
    if (!(w >= 0.0))
        throw std::domain_error("inverse_dispersion: chemical potential must be >= 0");
    double eta2;
    if (params.limit_model()) {
        eta2 = 2.0 * params.m * w;
    } else {
        eta2 = w * w / (params.c * params.c) + 2.0 * params.m * w;
    }
    const double eta = std::sqrt(eta2);
    return params.density_from_fermi_momentum(eta);
}

/// Kinetic energy density j(rho); the limit model gives the polytropic law
/// (3/10m)(6 pi^2 / q)^(2/3) rho^(5/3).
inline double kinetic_density(double rho, const ModelParams& params) {
    params.validate();
    if (!(rho >= 0.0)) throw std::domain_error("kinetic_density: density must be >= 0");
    if (rho == 0.0) return 0.0;
    if (params.limit_model())
        return 0.3 / params.m * params.a0() * std::pow(rho, 5.0 / 3.0);
    const double a = params.m * params.c;
    const double t = params.fermi_momentum(rho) / a;
    const double a2 = a * a;
    return params.q * params.c * a2 * a2 / (16.0 * kPi * kPi) * detail::kernel_f(t);
}

/// Companion density jbar(rho) appearing in the finite-c virial identity.
/// Has no limit-model analogue.
inline double kinetic_density_bar(double rho, const ModelParams& params) {
    params.validate();
    if (params.limit_model())
        throw UnsupportedModelError("kinetic_density_bar: undefined in the limit model");
    if (!(rho >= 0.0)) throw std::domain_error("kinetic_density_bar: density must be >= 0");
    if (rho == 0.0) return 0.0;
    const double a = params.m * params.c;
    const double t = params.fermi_momentum(rho) / a;
    return params.q * a * a / (4.0 * kPi * kPi * params.c) * detail::kernel_g(t);
}

/// Nonnegative defect j + m^2 c^4 jbar - m c^2 rho, evaluated in one shot so
/// the O(c^2) cancellation between its three pieces never reaches floating
/// point. Finite c only.
inline double kinetic_defect_density(double rho, const ModelParams& params) {
    params.validate();
    if (params.limit_model())
        throw UnsupportedModelError("kinetic_defect_density: undefined in the limit model");
    if (!(rho >= 0.0)) throw std::domain_error("kinetic_defect_density: density must be >= 0");
    if (rho == 0.0) return 0.0;
    const double a = params.m * params.c;
    const double t = params.fermi_momentum(rho) / a;
    const double a2 = a * a;
    return params.q * params.c * a2 * a2 / (16.0 * kPi * kPi) * detail::kernel_defect(t);
}

/// Gap p^2/2m - T_c(p) >= 0, via the exact rearrangement
/// p^2 T / (2m (T + 2mc^2)) so the result keeps full relative precision even
/// when it is ~1/c^2 of either operand.
inline double dispersion_gap(double p, const ModelParams& params) {
    if (params.limit_model()) return 0.0;
    const double T = dispersion(p, params);
    const double mc2 = params.m * params.c * params.c;
    return p * p * T / (2.0 * params.m * (T + 2.0 * mc2));
}

/// Lower-bound slope of T_c(p) + delta >= B p.
inline double dispersion_lower_slope(double delta, const ModelParams& params) {
    const double root5 = std::sqrt(5.0);
    const double b1 = 2.0 * std::sqrt(delta) / std::sqrt(2.0 * root5 * params.m);
    if (params.limit_model()) return b1;
    return std::min(b1, params.c / 2.0);
}

struct BoundCheckRanges {
    double p_min = 1e-3, p_max = 1e3;
    double m_min = 1e-2, m_max = 1e2;
    double c_min = 1.0 + 1e-9, c_max = 1e4;  // sandwich bound needs c > 1
    double delta_min = 1e-3, delta_max = 1e3;

    void validate() const {
        auto ok = [](double lo, double hi) { return lo > 0.0 && hi >= lo && std::isfinite(hi); };
        if (!ok(p_min, p_max) || !ok(m_min, m_max) || !ok(c_min, c_max) ||
            !ok(delta_min, delta_max) || !(c_min > 1.0))
            throw std::invalid_argument("BoundCheckRanges: ranges must be positive (c > 1) and ordered");
    }
};

struct BoundCheckReport {
    long samples = 0;
    double worst_violation = 0.0;  ///< worst normalized violation over both inequalities
    double worst_p = 0.0, worst_m = 0.0, worst_c = 0.0, worst_delta = 0.0;
};

namespace detail {

// splitmix64-fed xorshift-free generator: deterministic across platforms,
// unlike std::uniform_real_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    double uniform01() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
    double log_uniform(double lo, double hi) {
        return lo * std::exp(uniform01() * std::log(hi / lo));
    }

private:
    std::uint64_t state_;
};

}  // namespace detail

/// Samples the two scalar operator inequalities on pseudo-random
/// (p, m, c, delta) tuples and reports the worst normalized violation:
///   T_c(p) + delta >= min{2 sqrt(delta)/sqrt(2 sqrt(5) m), c/2} * p
///   p^4 / (8m (p^2+m^2) c^2)  <=  p^2/2m - T_c(p)  <=  p^4 / (8 m^3 c^2)
inline BoundCheckReport dispersion_bound_check(long samples, std::uint64_t seed,
                                               const BoundCheckRanges& ranges = {}) {
    if (samples < 1) throw std::invalid_argument("dispersion_bound_check: samples must be >= 1");
    ranges.validate();
    detail::Rng rng(seed);
    BoundCheckReport report;
    report.samples = samples;
    for (long i = 0; i < samples; ++i) {
        const double p = rng.log_uniform(ranges.p_min, ranges.p_max);
        const double m = rng.log_uniform(ranges.m_min, ranges.m_max);
        const double c = rng.log_uniform(ranges.c_min, ranges.c_max);
        const double delta = rng.log_uniform(ranges.delta_min, ranges.delta_max);
        ModelParams params{m, 1.0, 1.0, c};

        const double T = dispersion(p, params);
        const double lower = dispersion_lower_slope(delta, params) * p;
        double violation = (lower - (T + delta)) / std::max(lower, 1e-300);

        const double gap = dispersion_gap(p, params);
        const double p2 = p * p;
        const double lo = p2 * p2 / (8.0 * m * (p2 + m * m) * c * c);
        const double hi = p2 * p2 / (8.0 * m * m * m * c * c);
        violation = std::max(violation, (lo - gap) / lo);
        violation = std::max(violation, (gap - hi) / hi);

        if (violation > report.worst_violation) {
            report.worst_violation = violation;
            report.worst_p = p;
            report.worst_m = m;
            report.worst_c = c;
            report.worst_delta = delta;
        }
    }
    return report;
}

}  // namespace starlab

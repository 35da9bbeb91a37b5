#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace starlab {

constexpr double kPi = 3.14159265358979323846;

/// Distinguished value of the speed of light selecting the nonrelativistic
/// limit model. It is a first-class model selector: every kernel branches
/// on it explicitly instead of treating it as a large float.
constexpr double kLimitC = std::numeric_limits<double>::infinity();

/// Physical constants of the star model, in dimensionless model units.
struct ModelParams {
    double m = 1.0;      ///< particle mass, > 0
    double q = 1.0;      ///< spin degeneracy, >= 1
    double kappa = 1.0;  ///< gravitational coupling, > 0
    double c = kLimitC;  ///< speed of light, finite positive or kLimitC

    bool limit_model() const { return std::isinf(c); }

    // Derived constants are recomputed on demand so they can never go stale
    // when a field is edited.

    /// (6 pi^2 / q)^(2/3), the prefactor of eta^2 = a0 * rho^(2/3).
    double a0() const { return std::pow(6.0 * kPi * kPi / q, 2.0 / 3.0); }

    /// Optimal constant (3/4)(6 pi^2 / q)^(1/3) of the kinetic-Coulomb
    /// inequality; the ultrarelativistic kinetic density is k_cl * c * rho^(4/3).
    double k_classical() const { return 0.75 * std::cbrt(6.0 * kPi * kPi / q); }

    /// Fermi momentum eta(rho) = (6 pi^2 rho / q)^(1/3).
    double fermi_momentum(double rho) const {
        return std::cbrt(6.0 * kPi * kPi * rho / q);
    }

    /// Inverse of fermi_momentum.
    double density_from_fermi_momentum(double eta) const {
        return q * eta * eta * eta / (6.0 * kPi * kPi);
    }

    void validate() const {
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::invalid_argument("ModelParams: m must be finite and > 0");
        if (!(q >= 1.0) || !std::isfinite(q))
            throw std::invalid_argument("ModelParams: q must be finite and >= 1");
        if (!(kappa > 0.0) || !std::isfinite(kappa))
            throw std::invalid_argument("ModelParams: kappa must be finite and > 0");
        if (!(c > 0.0) || std::isnan(c))
            throw std::invalid_argument("ModelParams: c must be > 0 (inf selects the limit model)");
    }

    ModelParams with_c(double new_c) const {
        ModelParams p = *this;
        p.c = new_c;
        return p;
    }
};

}  // namespace starlab

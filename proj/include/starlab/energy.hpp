#pragma once

#include <cmath>
#include <string>

#include "starlab/kinetic.hpp"
#include "starlab/params.hpp"
#include "starlab/potential.hpp"
#include "starlab/profile.hpp"

namespace starlab {

struct EnergyBreakdown {
    double kinetic = 0.0;  ///< 4 pi Int j(rho) r^2 dr
    double coulomb = 0.0;  ///< D(rho, rho)
    double total = 0.0;    ///< kinetic - kappa * coulomb
};

inline EnergyBreakdown total_energy(const DensityProfile& profile, const ModelParams& params) {
    EnergyBreakdown e;
    e.kinetic = profile.integrate(
        [&](double rho, double) { return kinetic_density(rho, params); });
    e.coulomb = coulomb_energy(profile);
    e.total = e.kinetic - params.kappa * e.coulomb;
    return e;
}

/// 4 pi Int rho^(5/3) r^2 dr, the L^(5/3) moment of the density.
inline double kinetic_moment(const DensityProfile& profile) {
    return profile.integrate([](double rho, double) { return std::pow(rho, 5.0 / 3.0); });
}

/// 4 pi Int T_c(eta(rho)) rho r^2 dr, the dispersion energy of the occupied states.
inline double dispersion_energy(const DensityProfile& profile, const ModelParams& params) {
    return profile.integrate([&](double rho, double) {
        return dispersion(params.fermi_momentum(rho), params) * rho;
    });
}

/// A solved minimizer with its diagnostics.
struct StarSolution {
    ModelParams params;
    DensityProfile profile;
    double mu = 0.0;            ///< Lagrange multiplier, > 0
    double radius = 0.0;        ///< free-boundary radius
    double kinetic_energy = 0.0;
    double coulomb_energy = 0.0;
    double total_energy = 0.0;  ///< kinetic - kappa * coulomb
    double virial_residual = 0.0;      ///< signed residual of the virial identity
    double multiplier_residual = 0.0;  ///< max normalized residual (integral + boundary laws)
    double boundary_residual = 0.0;    ///< |mu - kappa N / R|
    std::string backend;               ///< "SHOOT", "PICARD" or "BOTH"
    int iterations = 0;                ///< outer iterations / fixed-point sweeps
    long steps = 0;                    ///< total ODE steps (shooting) or grid ops
};

/// Signed residual of the virial identity at a critical point.
///
/// Finite c:   Int j - m^2 c^4 Int jbar - kappa D + m c^2 N
/// rearranged cancellation-free as 2 Int j - Int defect - kappa D.
/// Limit:      2 Int j_inf - kappa D.
inline double virial_residual(const StarSolution& sol) {
    double defect_integral = 0.0;
    if (!sol.params.limit_model())
        defect_integral = sol.profile.integrate([&](double rho, double) {
            return kinetic_defect_density(rho, sol.params);
        });
    return 2.0 * sol.kinetic_energy - defect_integral - sol.params.kappa * sol.coulomb_energy;
}

/// Max of the two normalized multiplier residuals: the integral law
/// -mu N = Int T(eta) rho - 2 kappa D, scaled by mu N, and the boundary law
/// |mu - kappa N / R| / mu.
inline double multiplier_residual(const StarSolution& sol) {
    const double n = sol.profile.mass();
    const double mu_n = sol.mu * n;
    const double t_int = dispersion_energy(sol.profile, sol.params);
    const double integral_res =
        std::abs(t_int - 2.0 * sol.params.kappa * sol.coulomb_energy + mu_n) / mu_n;
    const double boundary_res = std::abs(sol.mu - sol.params.kappa * n / sol.radius) / sol.mu;
    return std::max(integral_res, boundary_res);
}

/// Scale-invariant ratio K_cl ||rho||_{4/3}^{4/3} ||rho||_1^{2/3} / (kappa D);
/// each profile's value is an upper bound for the critical-mass constant to
/// the power 2/3.
inline double gns_ratio(const DensityProfile& profile, const ModelParams& params) {
    const double n43 = profile.integrate(
        [](double rho, double) { return std::pow(rho, 4.0 / 3.0); });
    const double d = coulomb_energy(profile);
    if (!(d > 0.0)) throw std::domain_error("gns_ratio: Coulomb energy must be positive");
    return params.k_classical() * n43 * std::pow(profile.mass(), 2.0 / 3.0) /
           (params.kappa * d);
}

}  // namespace starlab

#pragma once

// Exact scaling covariances. The limit functional is covariant under the
// mass-preserving family rho_N(x) = beta^2 rho(beta^(1/3) x) with
// beta = N/N0, which carries minimizers to minimizers with
//   mu -> beta^(4/3) mu,  R -> beta^(-1/3) R,  sup rho -> beta^2,
//   energies -> beta^(7/3).
// At finite c the substitution rho(x) = c^-3 rho~(c^-(1/2) x) identifies the
// c-dependent problem with the c = 1 problem at mass c^(-3/2) N and energy
// factor c^(-7/2).

#include <cmath>

#include "starlab/energy.hpp"
#include "starlab/errors.hpp"
#include "starlab/solver.hpp"

namespace starlab {

/// Exact rescaling of a limit-model minimizer to a new mass. All derived
/// quantities are recomputed from the transformed profile.
inline StarSolution limit_rescale(const StarSolution& sol, double target_mass) {
    if (!sol.params.limit_model())
        throw UnsupportedModelError("limit_rescale: exact covariance holds only at c = infinity");
    if (!(target_mass > 0.0))
        throw std::invalid_argument("limit_rescale: target mass must be > 0");
    const double beta = target_mass / sol.profile.mass();

    StarSolution out;
    out.params = sol.params;
    out.profile = sol.profile.dilated(beta);
    out.mu = sol.mu * std::pow(beta, 4.0 / 3.0);
    out.radius = sol.radius * std::pow(beta, -1.0 / 3.0);
    out.backend = sol.backend;
    out.iterations = sol.iterations;
    out.steps = sol.steps;
    const EnergyBreakdown e = total_energy(out.profile, out.params);
    out.kinetic_energy = e.kinetic;
    out.coulomb_energy = e.coulomb;
    out.total_energy = e.total;
    out.virial_residual = virial_residual(out);
    out.multiplier_residual = multiplier_residual(out);
    out.boundary_residual =
        std::abs(out.mu - out.params.kappa * out.profile.mass() / out.radius);
    return out;
}

/// Residual of the exact identity E_{c=1}(c^(-3/2) N) = c^(-7/2) E_c(N),
/// computed by solving both problems.
inline double verify_c_scaling(const ModelParams& params, double target_mass, double c,
                               const SolverConfig& config = {}) {
    if (!(c > 0.0) || std::isinf(c))
        throw std::invalid_argument("verify_c_scaling: c must be finite and > 0");
    const StarSolution at_c = solve_star(params.with_c(c), target_mass, config);
    const StarSolution at_unit =
        solve_star(params.with_c(1.0), std::pow(c, -1.5) * target_mass, config);
    const double scaled = std::pow(c, -3.5) * at_c.total_energy;
    return std::abs(at_unit.total_energy - scaled) / std::abs(scaled);
}

}  // namespace starlab

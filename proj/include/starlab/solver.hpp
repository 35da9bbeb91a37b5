#pragma once

#include <algorithm>
#include <cmath>

#include "starlab/picard.hpp"
#include "starlab/shooting.hpp"

namespace starlab {

struct BackendDiff {
    double sup_density = 0.0;  ///< sup-norm density difference / sup density
    double mu = 0.0, radius = 0.0, energy = 0.0;  ///< relative differences
};

inline BackendDiff compare_backends(const StarSolution& a, const StarSolution& b) {
    BackendDiff d;
    const double scale = a.profile.sup_density();
    for (std::size_t i = 0; i < a.profile.size(); ++i) {
        const double r = a.profile.grid()[i];
        d.sup_density = std::max(
            d.sup_density, std::abs(a.profile.values()[i] - b.profile.value_at(r)) / scale);
    }
    d.mu = std::abs(a.mu - b.mu) / a.mu;
    d.radius = std::abs(a.radius - b.radius) / a.radius;
    d.energy = std::abs(a.total_energy - b.total_energy) / std::abs(a.total_energy);
    return d;
}

/// Solves with the configured backend. Backend::Both runs the two independent
/// backends, checks that they agree within the reconciliation gates, and
/// returns the shooting solution tagged "BOTH".
inline StarSolution solve(const ModelParams& params, double target_mass,
                          const SolverConfig& config = {}) {
    switch (config.backend) {
        case Backend::Shoot:
            return solve_star(params, target_mass, config);
        case Backend::Picard:
            return picard_solve(params, target_mass, config);
        default:
            break;
    }
    StarSolution shoot = solve_star(params, target_mass, config);
    StarSolution picard = picard_solve(params, target_mass, config);
    const BackendDiff diff = compare_backends(shoot, picard);
    if (diff.sup_density > 1e-6 || diff.mu > 1e-8 || diff.radius > 1e-8 || diff.energy > 1e-8)
        throw BackendMismatchError("solve: backends disagree beyond the reconciliation gates");
    shoot.backend = "BOTH";
    shoot.iterations += picard.iterations;
    return shoot;
}

}  // namespace starlab

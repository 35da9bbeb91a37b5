#pragma once

#include <stdexcept>

namespace starlab {

enum class Backend { Shoot, Picard, Both };

inline const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Shoot: return "SHOOT";
        case Backend::Picard: return "PICARD";
        default: return "BOTH";
    }
}

struct SolverConfig {
    Backend backend = Backend::Shoot;
    double ode_rtol = 1e-11;
    double ode_atol = 1e-13;
    double boundary_tol = 1e-12;   ///< event tolerance on u, relative to the central value
    double mass_rtol = 1e-10;      ///< outer root-find tolerance on the mass
    double picard_tau = 0.5;       ///< fixed-point damping in (0, 1]
    int picard_max_iters = 500;
    double picard_tol = 1e-10;     ///< weighted sup-norm stop for successive iterates
    int grid_nodes = 8001;         ///< output grid size over [0, 1.05 R]
    double max_radius_scale = 1e6; ///< safeguard: no boundary within this many core scales fails

    void validate() const {
        if (!(ode_rtol > 0.0) || !(ode_atol > 0.0))
            throw std::invalid_argument("SolverConfig: ODE tolerances must be > 0");
        if (!(boundary_tol > 0.0))
            throw std::invalid_argument("SolverConfig: boundary tolerance must be > 0");
        if (!(mass_rtol > 0.0))
            throw std::invalid_argument("SolverConfig: mass tolerance must be > 0");
        if (!(picard_tau > 0.0) || picard_tau > 1.0)
            throw std::invalid_argument("SolverConfig: damping must lie in (0, 1]");
        if (picard_max_iters < 1)
            throw std::invalid_argument("SolverConfig: iteration cap must be >= 1");
        if (!(picard_tol > 0.0))
            throw std::invalid_argument("SolverConfig: fixed-point tolerance must be > 0");
        if (grid_nodes < 101 || grid_nodes % 2 == 0)
            throw std::invalid_argument("SolverConfig: grid_nodes must be odd and >= 101");
        if (!(max_radius_scale > 1.0))
            throw std::invalid_argument("SolverConfig: safeguard radius scale must be > 1");
    }
};

}  // namespace starlab

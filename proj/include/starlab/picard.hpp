#pragma once

// Fixed-point backend. The Euler-Lagrange relation is read as a map
// rho -> g([kappa V_rho - mu]_+) with g the dispersion inverse; the iterate
// is damped, and mu is re-solved every sweep by monotone root finding so the
// candidate density carries exactly the target mass.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "starlab/energy.hpp"
#include "starlab/errors.hpp"
#include "starlab/potential.hpp"
#include "starlab/profile.hpp"
#include "starlab/roots.hpp"
#include "starlab/shooting.hpp"
#include "starlab/solver_config.hpp"

namespace starlab {

namespace detail {

inline double cubic_interp(const std::vector<double>& grid, const std::vector<double>& f,
                           double h, double x) {
    const std::size_t n = grid.size();
    if (x <= grid.front()) return f.front();
    if (x >= grid.back()) return f.back();
    std::size_t i = std::min(static_cast<std::size_t>(x / h), n - 2);
    std::size_t lo = (i == 0) ? 0 : i - 1;
    if (lo + 3 >= n) lo = n - 4;
    const double t = (x - grid[lo]) / h;
    const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    return f[lo] * l0 + f[lo + 1] * l1 + f[lo + 2] * l2 + f[lo + 3] * l3;
}

inline double mass_on_grid(const std::vector<double>& g, const std::vector<double>& r, double h) {
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = g[i] * r[i] * r[i];
    return 4.0 * kPi * simpson(f, h);
}

}  // namespace detail

namespace detail {

inline StarSolution picard_solve_impl(const ModelParams& params, double target_mass,
                                      const SolverConfig& config,
                                      const DensityProfile* initial) {

    const detail::DensityOfPotential rho_of_u(params);
    const std::size_t n = static_cast<std::size_t>(config.grid_nodes);

    // Initial domain from the uniform-ball self-consistency radius of the
    // limit model (an upper bound on the finite-c radius at the same mass).
    const double ball_radius =
        params.a0() * std::pow(3.0 * target_mass / (4.0 * kPi), 2.0 / 3.0) /
        (params.m * params.kappa * target_mass);
    double domain = 2.2 * ball_radius;
    std::vector<double> r(n), rho(n), work;
    auto build_grid = [&](double length) {
        for (std::size_t i = 0; i < n; ++i)
            r[i] = length * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    build_grid(domain);
    if (initial != nullptr) {
        domain = 1.25 * initial->support_radius();
        build_grid(domain);
        for (std::size_t i = 0; i < n; ++i) rho[i] = initial->value_at(r[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i) rho[i] = r[i] <= ball_radius ? 1.0 : 0.0;
        const double raw_mass = detail::mass_on_grid(rho, r, r[1] - r[0]);
        for (double& v : rho) v *= target_mass / raw_mass;
    }

    double mu = 0.0;
    double change = std::numeric_limits<double>::infinity();
    int sweeps = 0;
    long mass_evals = 0;
    std::vector<double> candidate(n), potential(n);

    for (int regrid = 0; regrid < 6; ++regrid) {
        const double h = r[1] - r[0];
        bool converged = false;
        while (sweeps < config.picard_max_iters) {
            ++sweeps;
            RadialPotential pot = newton_potential(r, rho, h);
            for (std::size_t i = 0; i < n; ++i) potential[i] = params.kappa * pot.values[i];

            auto mass_of_mu = [&](double trial_mu) {
                for (std::size_t i = 0; i < n; ++i)
                    candidate[i] = rho_of_u(potential[i] - trial_mu);
                ++mass_evals;
                return detail::mass_on_grid(candidate, r, h);
            };
            double lo = 0.0, hi = potential[0];
            double m_lo = mass_of_mu(lo);
            if (m_lo < target_mass) {  // transient iterate too dilute: allow mu < 0
                lo = -hi;
                while ((m_lo = mass_of_mu(lo)) < target_mass) {
                    lo *= 2.0;
                    if (lo < -1e12 * hi)
                        throw NonconvergenceError("picard_solve: cannot bracket multiplier",
                                                  change);
                }
            }
            mu = brent([&](double x) { return mass_of_mu(x) - target_mass; }, lo, hi,
                       m_lo - target_mass, -target_mass, 1e-16 * hi, 1e-15);
            mass_of_mu(mu);  // leave `candidate` evaluated at the root

            double sup = 1e-300, diff = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sup = std::max(sup, rho[i]);
                diff = std::max(diff, std::abs(candidate[i] - rho[i]));
            }
            for (std::size_t i = 0; i < n; ++i)
                rho[i] = (1.0 - config.picard_tau) * rho[i] + config.picard_tau * candidate[i];
            change = diff / sup;
            if (change <= config.picard_tol) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NonconvergenceError(
                "picard_solve: fixed-point iteration did not converge within the sweep cap",
                change);

        // The free boundary must sit comfortably inside the domain.
        const double support = params.kappa * target_mass / mu;
        if (support > 0.92 * domain) {
            const double new_domain = 1.6 * support;
            work.assign(n, 0.0);
            std::vector<double> old_r = r;
            std::vector<double> old_rho = rho;
            const double old_h = old_r[1] - old_r[0];
            build_grid(new_domain);
            for (std::size_t i = 0; i < n; ++i)
                rho[i] = r[i] <= old_r.back()
                             ? std::max(0.0, detail::cubic_interp(old_r, old_rho, old_h, r[i]))
                             : 0.0;
            domain = new_domain;
            continue;
        }
        break;
    }

    // Converged state: locate the free boundary kappa V = mu and evaluate the
    // fixed-point map once more on the output grid.
    const double h = r[1] - r[0];
    RadialPotential pot = newton_potential(r, rho, h);
    for (std::size_t i = 0; i < n; ++i) potential[i] = params.kappa * pot.values[i];
    std::size_t cross = 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (potential[i] > mu && potential[i + 1] <= mu) {
            cross = i;
            break;
        }
    if (cross == 0 && potential[1] <= mu)
        throw NonconvergenceError("picard_solve: collapsed support", change);
    const double radius =
        find_root([&](double x) { return detail::cubic_interp(r, potential, h, x) - mu; },
                  r[cross], r[cross + 1], 0.0, 1e-15);

    const std::size_t m = static_cast<std::size_t>(config.grid_nodes);
    std::vector<double> out_grid(m), out_values(m);
    const double out_h = 1.05 * radius / static_cast<double>(m - 1);
    double running_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const double x = static_cast<double>(i) * out_h;
        out_grid[i] = x;
        if (x >= radius) {
            out_values[i] = 0.0;
            continue;
        }
        const double u = detail::cubic_interp(r, potential, h, x) - mu;
        running_min = std::min(running_min, std::max(u, 0.0));
        out_values[i] = rho_of_u(running_min);
    }

    StarSolution sol;
    sol.params = params;
    sol.profile = DensityProfile(std::move(out_grid), std::move(out_values), radius);
    sol.mu = mu;
    sol.radius = radius;
    sol.backend = "PICARD";
    sol.iterations = sweeps;
    sol.steps = mass_evals;
    const EnergyBreakdown e = total_energy(sol.profile, params);
    sol.kinetic_energy = e.kinetic;
    sol.coulomb_energy = e.coulomb;
    sol.total_energy = e.total;
    sol.virial_residual = virial_residual(sol);
    sol.multiplier_residual = multiplier_residual(sol);
    sol.boundary_residual = std::abs(sol.mu - params.kappa * sol.profile.mass() / sol.radius);
    if (!(sol.mu > 0.0) || !(sol.total_energy < 0.0))
        throw SolverError("picard_solve: solution violates mu > 0 or E < 0");
    // A genuine fixed point certifies itself; a grid-scale artifact (e.g. a
    // supercritical target concentrating onto a few cells) fails loudly here.
    const double mass_err = std::abs(sol.profile.mass() - target_mass) / target_mass;
    if (mass_err > 1e-6 || sol.multiplier_residual > 1e-4 ||
        std::abs(sol.virial_residual) > 1e-4 * sol.kinetic_energy)
        throw NonconvergenceError("picard_solve: converged state fails its certificates",
                                  change);
    return sol;
}

}  // namespace detail

/// Damped fixed-point solve; `initial` warm-starts the iteration.
inline StarSolution picard_solve(const ModelParams& params, double target_mass,
                                 const SolverConfig& config = {},
                                 const DensityProfile* initial = nullptr) {
    params.validate();
    config.validate();
    if (!(target_mass > 0.0) || !std::isfinite(target_mass))
        throw std::invalid_argument("picard_solve: target mass must be finite and > 0");
    try {
        return detail::picard_solve_impl(params, target_mass, config, initial);
    } catch (const NonconvergenceError&) {
        // Distinguish genuine stagnation from a supercritical target: the
        // shooting bracket scan throws CriticalMassError above the threshold.
        if (!params.limit_model()) {
            int evals = 0;
            SolverConfig probe = config;
            probe.ode_rtol = std::max(config.ode_rtol, 1e-8);
            detail::shoot_for_mass(params, target_mass, probe, evals);
        }
        throw;
    }
}

}  // namespace starlab

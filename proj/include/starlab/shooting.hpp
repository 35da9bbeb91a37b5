#pragma once

// Shooting backend. Inside the support the Euler-Lagrange relation reads
// T_c(eta(rho)) = u with u(r) = kappa V(r) - mu, and Newton's theorem turns
// the potential into the radial Poisson equation (r^2 u')' = -4 pi kappa r^2
// rho(u_+). Starting from a central value u0 > 0 the potential decreases to
// its zero crossing R (the free boundary); exterior matching u = kappa N / r
// - mu identifies the mass as N = -R^2 u'(R) / kappa and the multiplier as
// mu = kappa N / R.

#include <algorithm>
#include <cmath>
#include <vector>

#include "starlab/energy.hpp"
#include "starlab/errors.hpp"
#include "starlab/kinetic.hpp"
#include "starlab/ode.hpp"
#include "starlab/params.hpp"
#include "starlab/profile.hpp"
#include "starlab/roots.hpp"
#include "starlab/solver_config.hpp"

namespace starlab {

/// Radial state of one shot: local potential u(r) = kappa V(r) - mu and its
/// derivative, integrated outward from the central value u0.
struct ShootingState {
    double u = 0.0;
    double du = 0.0;
    double r = 0.0;
    double u0 = 0.0;
};

struct ShootResult {
    DensityProfile profile;
    ShootingState boundary;        ///< state at the located zero crossing
    double mass = 0.0;             ///< -R^2 u'(R) / kappa from exterior matching
    long ode_steps = 0;
    std::vector<double> step_radii;  ///< raw adaptive mesh retained as metadata

    double radius() const { return boundary.r; }
    double du_at_boundary() const { return boundary.du; }
    double u0() const { return boundary.u0; }
};

namespace detail {

/// rho(u_+) and its u-derivative with precomputed constants.
struct DensityOfPotential {
    double coef;    // q / (6 pi^2)
    double inv_c2;  // 1/c^2, zero in the limit model
    double two_m;

    explicit DensityOfPotential(const ModelParams& p)
        : coef(p.q / (6.0 * kPi * kPi)),
          inv_c2(p.limit_model() ? 0.0 : 1.0 / (p.c * p.c)),
          two_m(2.0 * p.m) {}

    double operator()(double u) const {
        if (u <= 0.0) return 0.0;
        const double eta2 = u * u * inv_c2 + two_m * u;
        return coef * eta2 * std::sqrt(eta2);
    }
    double derivative(double u) const {
        if (u <= 0.0) return 0.0;
        const double eta2 = u * u * inv_c2 + two_m * u;
        return coef * 1.5 * std::sqrt(eta2) * (2.0 * u * inv_c2 + two_m);
    }
};

}  // namespace detail

/// Integrates one shot from the central potential u0 until the free boundary.
inline ShootResult shoot_profile(const ModelParams& params, double u0,
                                 const SolverConfig& config = {}) {
    params.validate();
    config.validate();
    if (!(u0 > 0.0) || !std::isfinite(u0))
        throw std::invalid_argument("shoot_profile: central potential must be finite and > 0");

    const detail::DensityOfPotential rho_of_u(params);
    const double four_pi_kappa = 4.0 * kPi * params.kappa;
    const double rho0 = rho_of_u(u0);

    // Even Taylor start u = u0 + a2 r^2 + a4 r^4 removes the 2/r singularity.
    const double a2 = -(2.0 * kPi * params.kappa / 3.0) * rho0;
    const double a4 = -(kPi * params.kappa / 5.0) * rho_of_u.derivative(u0) * a2;
    const double rscale = std::sqrt(u0 / std::abs(a2));
    const double r_start = 1e-6 * rscale;

    Dopri5<2> ode(
        [&](double r, const Dopri5<2>::State& y, Dopri5<2>::State& dydr) {
            dydr[0] = y[1];
            dydr[1] = -2.0 * y[1] / r - four_pi_kappa * rho_of_u(y[0]);
        },
        config.ode_rtol, config.ode_atol * u0);

    Dopri5<2>::State y0{u0 + a2 * r_start * r_start + a4 * std::pow(r_start, 4),
                        2.0 * a2 * r_start + 4.0 * a4 * std::pow(r_start, 3)};
    double r_event = 0.0;
    Dopri5<2>::State y_event{};
    const bool crossed = ode.integrate_until_zero(r_start, y0, config.max_radius_scale * rscale,
                                                  0, config.boundary_tol * u0, r_event, y_event);
    if (!crossed)
        throw NoBoundaryError("shoot_profile: no zero crossing before the safeguard radius");

    const ShootingState boundary{y_event[0], y_event[1], r_event, u0};
    const double radius = boundary.r;
    const double mass = -radius * radius * boundary.du / params.kappa;

    // Resample onto the uniform output grid over [0, 1.05 R].
    const int n = config.grid_nodes;
    std::vector<double> grid(n), values(n);
    const double h = 1.05 * radius / (n - 1);
    double running_min = u0;
    for (int i = 0; i < n; ++i) {
        const double r = i * h;
        grid[i] = r;
        double u;
        if (r >= radius) {
            values[i] = 0.0;
            continue;
        }
        if (r < r_start)
            u = u0 + a2 * r * r + a4 * r * r * r * r;
        else
            u = ode.evaluate(r)[0];
        if (u > running_min + 1e-10 * u0)
            throw SolverError("shoot_profile: non-monotone potential on resample");
        running_min = std::min(running_min, u);
        values[i] = rho_of_u(std::min(u, running_min));
    }
    return ShootResult{DensityProfile(std::move(grid), std::move(values), radius), boundary,
                       mass, ode.accepted_steps(), ode.step_points()};
}

namespace detail {

/// Finds u0 with shoot mass == target. At finite c the achievable mass
/// saturates at the collapse threshold; both a decrease and a relative
/// stagnation of the expanding bracket are reported as critical mass.
inline ShootResult shoot_for_mass(const ModelParams& params, double target_mass,
                                  const SolverConfig& config, int& evals) {
    ShootResult last;
    auto mass_at = [&](double u0) {
        last = shoot_profile(params, u0, config);
        ++evals;
        return last.mass;
    };

    double lo = 1.0, hi = 1.0;
    double m_hi = mass_at(1.0);
    double m_lo = m_hi;
    double best_mass = m_hi;
    if (m_hi >= target_mass) {
        while (m_lo >= target_mass) {
            lo /= 8.0;
            if (lo < 1e-280) throw BracketError("solve_star: cannot bracket mass from below");
            m_lo = mass_at(lo);
        }
    } else {
        while (m_hi < target_mass) {
            const double prev = m_hi;
            hi *= 4.0;
            if (hi > 1e280) throw BracketError("solve_star: cannot bracket mass from above");
            m_hi = mass_at(hi);
            best_mass = std::max(best_mass, m_hi);
            if (m_hi <= prev * (1.0 + 1e-8))
                throw CriticalMassError(
                    "solve_star: requested mass is at or above the collapse threshold; "
                    "largest achieved mass is a lower estimate of the critical mass",
                    best_mass);
            lo = hi / 4.0;
            m_lo = prev;
        }
    }

    const double u0_root = brent([&](double u0) { return mass_at(u0) - target_mass; },
                                 lo, hi, m_lo - target_mass, m_hi - target_mass, 0.0, 1e-15);
    if (last.u0() != u0_root) mass_at(u0_root);
    if (std::abs(last.mass - target_mass) > config.mass_rtol * target_mass)
        throw BracketError("solve_star: outer mass solve did not reach tolerance");
    return last;
}

}  // namespace detail

/// Computes the minimizer at the target mass with the shooting backend and
/// fills in energies and identity residuals.
inline StarSolution solve_star(const ModelParams& params, double target_mass,
                               const SolverConfig& config = {}) {
    params.validate();
    config.validate();
    if (!(target_mass > 0.0) || !std::isfinite(target_mass))
        throw std::invalid_argument("solve_star: target mass must be finite and > 0");

    int evals = 0;
    ShootResult shot = detail::shoot_for_mass(params, target_mass, config, evals);

    StarSolution sol;
    sol.params = params;
    sol.mu = params.kappa * shot.mass / shot.radius();
    sol.radius = shot.radius();
    sol.backend = "SHOOT";
    sol.iterations = evals;
    sol.steps = shot.ode_steps;
    sol.profile = std::move(shot.profile);
    const EnergyBreakdown e = total_energy(sol.profile, params);
    sol.kinetic_energy = e.kinetic;
    sol.coulomb_energy = e.coulomb;
    sol.total_energy = e.total;
    sol.virial_residual = virial_residual(sol);
    sol.multiplier_residual = multiplier_residual(sol);
    sol.boundary_residual = std::abs(sol.mu - params.kappa * sol.profile.mass() / sol.radius);
    if (!(sol.mu > 0.0) || !(sol.total_energy < 0.0))
        throw SolverError("solve_star: solution violates mu > 0 or E < 0");
    return sol;
}

}  // namespace starlab

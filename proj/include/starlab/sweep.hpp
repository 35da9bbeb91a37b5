#pragma once

// Ladder experiments. Sweep points are independent solves executed by a small
// worker pool (capped by STARLAB_THREADS) and merged in ladder order, so the
// output is deterministic regardless of scheduling.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "starlab/energy.hpp"
#include "starlab/errors.hpp"
#include "starlab/rates.hpp"
#include "starlab/rescale.hpp"
#include "starlab/solver.hpp"

namespace starlab {

/// One ladder point with its distance-to-limit observables.
struct SweepRecord {
    double c = 0.0;  ///< finite c of this point (kLimitC for the reference row)
    double n = 0.0;
    double energy = 0.0;
    double kinetic_moment = 0.0;  ///< 4 pi Int rho^(5/3) r^2 dr
    double mu = 0.0;
    double radius = 0.0;
    double sup_density = 0.0;
    double d_energy = 0.0;          ///< E_inf - E_c
    double d_kinetic_moment = 0.0;  ///< Int rho_c^(5/3) - Int rho_inf^(5/3)
    double d_mu = 0.0;              ///< mu_c - mu_inf
    double d_radius = 0.0;          ///< R_inf - R_c
    double virial_rel = 0.0;        ///< |virial residual| / kinetic
    double multiplier_res = 0.0;
    double boundary_rel = 0.0;      ///< |mu - kappa N / R| / mu
    int status = 0;                 ///< 0 ok, 3 solver failure
    std::string error;
};

struct SweepResult {
    std::vector<SweepRecord> records;  ///< finite-c rows in ladder order
    std::optional<SweepRecord> limit;  ///< reference row (c sweeps only)
    std::vector<StarSolution> solutions;  ///< aligned with records (empty rows on failure)
    std::optional<StarSolution> limit_solution;
    int status = 0;  ///< max status across rows
};

namespace detail {

inline SweepRecord record_of(const StarSolution& sol, double c, double n) {
    SweepRecord rec;
    rec.c = c;
    rec.n = n;
    rec.energy = sol.total_energy;
    rec.kinetic_moment = kinetic_moment(sol.profile);
    rec.mu = sol.mu;
    rec.radius = sol.radius;
    rec.sup_density = sol.profile.sup_density();
    rec.virial_rel = std::abs(sol.virial_residual) / sol.kinetic_energy;
    rec.multiplier_res = sol.multiplier_residual;
    rec.boundary_rel = sol.boundary_residual / sol.mu;
    return rec;
}

inline int thread_budget(std::size_t points) {
    unsigned budget = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("STARLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) budget = static_cast<unsigned>(v);
    }
    return static_cast<int>(std::min<std::size_t>(budget, points));
}

/// Runs job(i) for i in [0, count) on the worker pool; exceptions are
/// captured per index by the job itself.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job) {
    const int workers = thread_budget(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
        });
    for (auto& t : pool) t.join();
}

inline void validate_rate_budget(const SolverConfig& config, double c_max) {
    // Rate studies need solver error well below the smallest c^-2 signal.
    const double budget = 1e-3 / (c_max * c_max);
    if (config.ode_rtol > budget || config.mass_rtol > budget)
        throw std::invalid_argument(
            "sweep: solver tolerances too loose for the requested ladder; need <= " +
            std::to_string(budget));
}

}  // namespace detail

/// Solves the limit star once and each finite-c star once; fills the
/// distance-to-limit fields. Failed points carry per-record errors and a
/// nonzero aggregate status.
inline SweepResult sweep_c(const ModelParams& base, double n, std::vector<double> ladder,
                           const SolverConfig& config = {}, bool enforce_rate_budget = true) {
    base.validate();
    config.validate();
    if (ladder.empty()) throw std::invalid_argument("sweep_c: ladder must be nonempty");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (std::isinf(ladder[i]))
            throw std::invalid_argument("sweep_c: the limit model is the sweep reference and "
                                        "cannot appear in the ladder");
        if (!(ladder[i] > 0.0))
            throw std::invalid_argument("sweep_c: ladder entries must be > 0");
        if (i > 0 && !(ladder[i] > ladder[i - 1]))
            throw std::invalid_argument("sweep_c: ladder must be strictly increasing");
    }
    // Rate studies need solver error well under the smallest delta; the
    // corner report skips this gate and classifies such points as unresolved.
    if (enforce_rate_budget) detail::validate_rate_budget(config, ladder.back());

    SweepResult result;
    const StarSolution limit_sol = solve(base.with_c(kLimitC), n, config);
    result.limit = detail::record_of(limit_sol, kLimitC, n);
    const double kin_inf = result.limit->kinetic_moment;

    result.records.resize(ladder.size());
    result.solutions.resize(ladder.size());
    detail::parallel_for(ladder.size(), [&](std::size_t i) {
        SweepRecord& rec = result.records[i];
        try {
            StarSolution sol = solve(base.with_c(ladder[i]), n, config);
            rec = detail::record_of(sol, ladder[i], n);
            rec.d_energy = limit_sol.total_energy - sol.total_energy;
            rec.d_kinetic_moment = rec.kinetic_moment - kin_inf;
            rec.d_mu = sol.mu - limit_sol.mu;
            rec.d_radius = limit_sol.radius - sol.radius;
            result.solutions[i] = std::move(sol);
        } catch (const std::exception& ex) {
            rec.c = ladder[i];
            rec.n = n;
            rec.status = 3;
            rec.error = ex.what();
        }
    });
    result.limit_solution = limit_sol;
    for (const auto& r : result.records) result.status = std::max(result.status, r.status);
    return result;
}

enum class DeltaObservable { Energy, KineticMoment, Multiplier, Radius };

inline const char* observable_name(DeltaObservable o) {
    switch (o) {
        case DeltaObservable::Energy: return "dE";
        case DeltaObservable::KineticMoment: return "dKin";
        case DeltaObservable::Multiplier: return "dMu";
        default: return "dR";
    }
}

/// Power-law fit of one delta observable against c.
inline RateFit fit_rate(const std::vector<SweepRecord>& records, DeltaObservable obs) {
    std::vector<double> x, y;
    x.reserve(records.size());
    y.reserve(records.size());
    for (const auto& r : records) {
        if (r.status != 0) continue;
        x.push_back(r.c);
        switch (obs) {
            case DeltaObservable::Energy: y.push_back(r.d_energy); break;
            case DeltaObservable::KineticMoment: y.push_back(r.d_kinetic_moment); break;
            case DeltaObservable::Multiplier: y.push_back(r.d_mu); break;
            case DeltaObservable::Radius: y.push_back(r.d_radius); break;
        }
    }
    return fit_power_law(x, y, observable_name(obs));
}

struct NSweepResult {
    std::vector<SweepRecord> records;  ///< keyed by (c, n), one per ladder mass
    std::vector<StarSolution> solutions;
    RateFit sup_density_fit, radius_fit, mu_fit;
    double max_rescale_mismatch = 0.0;  ///< limit model: worst sup-norm gap vs exact covariance
    int status = 0;
};

/// Mass ladder at fixed c; fits the exponents of sup rho, R and mu. In the
/// limit model every record is additionally cross-checked against the exact
/// rescaling of the first one.
inline NSweepResult sweep_n(const ModelParams& base, std::vector<double> ladder, double c,
                            const SolverConfig& config = {}) {
    base.validate();
    config.validate();
    if (ladder.size() < 1) throw std::invalid_argument("sweep_n: ladder must be nonempty");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0))
            throw std::invalid_argument("sweep_n: ladder entries must be > 0");
        if (i > 0 && !(ladder[i] > ladder[i - 1]))
            throw std::invalid_argument("sweep_n: ladder must be strictly increasing");
    }

    NSweepResult result;
    result.records.resize(ladder.size());
    result.solutions.resize(ladder.size());
    detail::parallel_for(ladder.size(), [&](std::size_t i) {
        SweepRecord& rec = result.records[i];
        try {
            StarSolution sol = solve(base.with_c(c), ladder[i], config);
            rec = detail::record_of(sol, c, ladder[i]);
            result.solutions[i] = std::move(sol);
        } catch (const std::exception& ex) {
            rec.c = c;
            rec.n = ladder[i];
            rec.status = 3;
            rec.error = ex.what();
        }
    });
    for (const auto& r : result.records) result.status = std::max(result.status, r.status);

    std::vector<double> x, sup, rad, mu;
    for (const auto& r : result.records) {
        if (r.status != 0) continue;
        x.push_back(r.n);
        sup.push_back(r.sup_density);
        rad.push_back(r.radius);
        mu.push_back(r.mu);
    }
    result.sup_density_fit = fit_power_law(x, sup, "sup_rho");
    result.radius_fit = fit_power_law(x, rad, "R");
    result.mu_fit = fit_power_law(x, mu, "mu");

    if (std::isinf(c) && result.status == 0) {
        const StarSolution& ref = result.solutions.front();
        for (std::size_t i = 1; i < result.solutions.size(); ++i) {
            const StarSolution scaled = limit_rescale(ref, ladder[i]);
            const BackendDiff diff = compare_backends(result.solutions[i], scaled);
            result.max_rescale_mismatch =
                std::max({result.max_rescale_mismatch, diff.sup_density, diff.mu, diff.radius,
                          diff.energy});
        }
    }
    return result;
}

}  // namespace starlab

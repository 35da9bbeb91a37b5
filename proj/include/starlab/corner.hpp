#pragma once

// Corner-layer diagnostics: in the annulus between the finite-c support
// B(R_c) and the limit support B(R_inf), both densities decay like c^-3; the
// layer width itself is the dR observable of the c sweep.

#include <cmath>
#include <string>
#include <vector>

#include "starlab/rates.hpp"
#include "starlab/sweep.hpp"

namespace starlab {

struct CornerPoint {
    double c = 0.0;
    double radius_c = 0.0;
    double radius_inf = 0.0;
    double rho_inf_at_rc = 0.0;    ///< limit density sampled at the finite-c boundary
    double rho_c_at_inner = 0.0;   ///< finite-c density at R_c - K1/c^2
    bool contained = false;        ///< B(R_c) inside B(R_inf)
    bool resolved = false;         ///< layer width above the solver noise floor
};

struct CornerReport {
    std::vector<CornerPoint> points;
    double k1 = 0.0;               ///< layer-width amplitude, from the dR power-law fit
    RateFit dr_fit;                ///< dR vs c
    RateFit decay_fit;             ///< rho_inf(R_c) vs c over the resolved points
    bool conclusive = false;       ///< enough resolved points for the decay fit
    int status = 0;
};

/// Solves the ladder, fits the layer width, and samples both densities inside
/// the layer. Points whose layer width is under the noise floor are reported
/// as unresolved rather than failed.
inline CornerReport corner_layer_report(const ModelParams& base, double n,
                                        std::vector<double> ladder,
                                        const SolverConfig& config = {}) {
    SweepResult sweep = sweep_c(base, n, std::move(ladder), config,
                                /*enforce_rate_budget=*/false);
    CornerReport report;
    report.status = sweep.status;

    std::vector<double> xs, dr;
    for (const auto& rec : sweep.records)
        if (rec.status == 0 && rec.d_radius > 0.0) {
            xs.push_back(rec.c);
            dr.push_back(rec.d_radius);
        }
    if (xs.size() >= 3) {
        report.dr_fit = fit_power_law(xs, dr, "dR");
        report.k1 = report.dr_fit.amplitude;
    }

    const StarSolution& limit = *sweep.limit_solution;
    const double noise_floor = 1e3 * config.boundary_tol * limit.radius;
    std::vector<double> cs, decay;
    for (std::size_t i = 0; i < sweep.records.size(); ++i) {
        const SweepRecord& rec = sweep.records[i];
        if (rec.status != 0) continue;
        const StarSolution& sol = sweep.solutions[i];
        CornerPoint pt;
        pt.c = rec.c;
        pt.radius_c = sol.radius;
        pt.radius_inf = limit.radius;
        pt.contained = sol.radius <= limit.radius;
        pt.resolved = rec.d_radius > noise_floor;
        pt.rho_inf_at_rc = limit.profile.value_at(sol.radius);
        if (report.k1 > 0.0) {
            const double inner = sol.radius - report.k1 / (rec.c * rec.c);
            pt.rho_c_at_inner = inner > 0.0 ? sol.profile.value_at(inner) : sol.profile.sup_density();
        }
        if (pt.resolved && pt.rho_inf_at_rc > 0.0) {
            cs.push_back(pt.c);
            decay.push_back(pt.rho_inf_at_rc);
        }
        report.points.push_back(pt);
    }
    if (cs.size() >= 3) {
        report.decay_fit = fit_power_law(cs, decay, "rho_inf(R_c)");
        report.conclusive = true;
    }
    return report;
}

}  // namespace starlab

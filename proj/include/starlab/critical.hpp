#pragma once

// Stability probe. The mass-preserving trial family rho_lambda(x) =
// lambda^3 rho(lambda x) stretches the Coulomb term linearly in lambda while
// the relativistic kinetic term grows at most linearly for large lambda, so
// supercritical masses drive the energy to -infinity along the family; the
// limit model grows like lambda^2 and never collapses.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "starlab/energy.hpp"
#include "starlab/kinetic.hpp"
#include "starlab/profile.hpp"

namespace starlab {

enum class StabilityVerdict { Stable, UnboundedBelow, Inconclusive };

inline const char* verdict_name(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::Stable: return "STABLE";
        case StabilityVerdict::UnboundedBelow: return "UNBOUNDED_BELOW";
        default: return "INCONCLUSIVE";
    }
}

/// Running upper bound for the critical-mass constant, the minimum of the
/// scale-invariant kinetic/Coulomb ratio over every profile inspected so far.
class NStarEstimator {
public:
    /// Returns the updated running estimate in mass units.
    double feed(const DensityProfile& profile, const ModelParams& params) {
        best_ratio_ = std::min(best_ratio_, gns_ratio(profile, params));
        return estimate();
    }
    double estimate() const { return std::pow(best_ratio_, 1.5); }
    bool seeded() const { return std::isfinite(best_ratio_); }

private:
    double best_ratio_ = std::numeric_limits<double>::infinity();
};

struct LambdaSpan {
    double lo = 1e-2;
    double hi = 1e4;
    int count = 12;

    void validate() const {
        if (!(lo > 0.0) || !(hi > lo))
            throw std::invalid_argument("LambdaSpan: need 0 < lo < hi");
        if (count < 8) throw std::invalid_argument("LambdaSpan: need at least 8 samples");
    }
};

struct CriticalEstimate {
    ModelParams params;
    double n = 0.0;
    std::string trial_family;
    std::vector<double> lambdas;
    std::vector<double> energies;
    StabilityVerdict verdict = StabilityVerdict::Inconclusive;
    double n_star_upper_bound = 0.0;  ///< running estimate after feeding this probe's profile
};

/// Energy of the dilation rho_lambda(x) = lambda^3 rho(lambda x):
/// the Coulomb term scales exactly by lambda, the kinetic term is evaluated
/// pointwise on the compressed density.
inline double trial_energy(const DensityProfile& profile, const ModelParams& params,
                           double lambda, double coulomb) {
    const double l3 = lambda * lambda * lambda;
    const double kinetic = profile.integrate([&](double rho, double) {
        return kinetic_density(l3 * rho, params);
    }) / l3;
    return kinetic - lambda * params.kappa * coulomb;
}

/// Classifies the energy trace along a log-spaced lambda span evaluated on a
/// reference profile (a uniform ball of the requested mass), and updates the
/// running critical-mass bound.
inline CriticalEstimate critical_probe(const ModelParams& params, double n,
                                       const LambdaSpan& span, NStarEstimator& estimator) {
    params.validate();
    span.validate();
    if (!(n > 0.0)) throw std::invalid_argument("critical_probe: mass must be > 0");

    CriticalEstimate est;
    est.params = params;
    est.n = n;
    est.trial_family = "uniform ball, mass-preserving dilation lambda^3 rho(lambda x)";

    const DensityProfile ball = uniform_ball(n, 1.0);
    const double coulomb = coulomb_energy(ball);
    est.n_star_upper_bound = estimator.feed(ball, params);

    const double step = std::log(span.hi / span.lo) / (span.count - 1);
    est.lambdas.resize(span.count);
    est.energies.resize(span.count);
    for (int i = 0; i < span.count; ++i) {
        est.lambdas[i] = span.lo * std::exp(step * i);
        est.energies[i] = trial_energy(ball, params, est.lambdas[i], coulomb);
    }

    // Tail behavior decides the verdict: a monotone decreasing, negative tail
    // with negative log-lambda slope signals collapse; a rising tail leaving
    // the minimum behind signals stability.
    const int tail = std::max(3, span.count / 4);
    const int first = span.count - tail;
    bool tail_decreasing = true;
    for (int i = first; i + 1 < span.count; ++i)
        if (est.energies[i + 1] >= est.energies[i]) tail_decreasing = false;
    const double slope = (est.energies.back() - est.energies[first]) /
                         (std::log(est.lambdas.back()) - std::log(est.lambdas[first]));
    const double min_energy = *std::min_element(est.energies.begin(), est.energies.end());

    if (tail_decreasing && slope < 0.0 && est.energies.back() < 0.0)
        est.verdict = StabilityVerdict::UnboundedBelow;
    else if (est.energies.back() > min_energy && slope > 0.0)
        est.verdict = StabilityVerdict::Stable;
    else
        est.verdict = StabilityVerdict::Inconclusive;
    return est;
}

}  // namespace starlab

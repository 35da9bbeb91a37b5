#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "starlab/corner.hpp"
#include "starlab/critical.hpp"
#include "starlab/solver.hpp"

using namespace starlab;
using Catch::Matchers::WithinRel;

TEST_CASE("corner layer: containment and cubic decay of the limit density") {
    const CornerReport report = corner_layer_report(ModelParams{}, 1.0, {8.0, 16.0, 32.0});
    REQUIRE(report.status == 0);
    REQUIRE(report.points.size() == 3);
    CHECK(report.k1 > 0.0);
    for (const auto& p : report.points) {
        CHECK(p.contained);
        CHECK(p.resolved);
        CHECK(p.radius_c < p.radius_inf);
        CHECK(p.rho_inf_at_rc > 0.0);
        CHECK(p.rho_c_at_inner > 0.0);
    }
    REQUIRE(report.conclusive);
    CHECK(report.decay_fit.exponent > -3.3);
    CHECK(report.decay_fit.exponent < -2.7);
}

TEST_CASE("corner layer below the noise floor is inconclusive, not failed") {
    const CornerReport report =
        corner_layer_report(ModelParams{}, 1.0, {1e5, 2e5, 4e5});
    CHECK(report.status == 0);
    CHECK_FALSE(report.conclusive);
    for (const auto& p : report.points) CHECK_FALSE(p.resolved);
}

TEST_CASE("stability probe: limit model never collapses") {
    NStarEstimator est;
    const CriticalEstimate probe = critical_probe(ModelParams{}, 1.0, {}, est);
    CHECK(probe.verdict == StabilityVerdict::Stable);
    // quadratic growth of the trial energy at large dilation
    const std::size_t n = probe.energies.size();
    const double ratio = probe.energies[n - 1] / probe.energies[n - 2];
    const double lam_ratio = probe.lambdas[n - 1] / probe.lambdas[n - 2];
    CHECK_THAT(ratio, WithinRel(lam_ratio * lam_ratio, 0.05));
}

TEST_CASE("stability probe: verdicts across the threshold") {
    NStarEstimator est;
    CHECK(critical_probe(ModelParams{}.with_c(8.0), 1.0, {}, est).verdict ==
          StabilityVerdict::Stable);
    const CriticalEstimate collapse =
        critical_probe(ModelParams{}.with_c(2.0), 1e6, {}, est);
    CHECK(collapse.verdict == StabilityVerdict::UnboundedBelow);
    for (std::size_t i = 1; i < collapse.energies.size(); ++i)
        CHECK(collapse.energies[i] < collapse.energies[i - 1]);

    LambdaSpan bad;
    bad.count = 5;
    CHECK_THROWS_AS(critical_probe(ModelParams{}, 1.0, bad, est), std::invalid_argument);
}

TEST_CASE("critical-mass bound estimate decreases as better profiles arrive") {
    const ModelParams params{};
    NStarEstimator est;
    const double from_ball = est.feed(uniform_ball(1.0, 1.0), params);
    CHECK_THAT(from_ball, WithinRel(5.254679265373141, 1e-6));

    const StarSolution star = solve(params, 1.0);
    const double from_star = est.feed(star.profile, params);
    CHECK(from_star <= from_ball);
    CHECK(from_star > 0.0);
    CHECK_THAT(from_star, WithinRel(4.47774, 1e-4));

    // feeding a worse profile cannot move the bound back up
    const double again = est.feed(uniform_ball(2.0, 3.0), params);
    CHECK(again == from_star);
}

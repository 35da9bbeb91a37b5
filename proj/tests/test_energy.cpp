#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "starlab/energy.hpp"
#include "starlab/shooting.hpp"

using namespace starlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("energy ordering: limit functional dominates within the integrated sandwich") {
    const DensityProfile ball = uniform_ball(1.0, 1.0);
    const ModelParams limit{};
    for (double c : {4.0, 16.0, 64.0}) {
        const ModelParams pc = limit.with_c(c);
        const double e_inf = total_energy(ball, limit).total;
        const double e_c = total_energy(ball, pc).total;
        const double moment =
            ball.integrate([](double rho, double) { return std::pow(rho, 7.0 / 3.0); });
        const double slack = limit.a0() * limit.a0() / (8.0 * std::pow(limit.m, 3) * c * c) * moment;
        CHECK(e_inf >= e_c);
        CHECK(e_c >= e_inf - slack);
    }
}

TEST_CASE("virial residual is honestly nonzero away from a minimizer") {
    const DensityProfile ball = uniform_ball(1.0, 1.0);
    StarSolution fake;
    fake.params = ModelParams{};
    fake.profile = ball;
    const EnergyBreakdown e = total_energy(ball, fake.params);
    fake.kinetic_energy = e.kinetic;
    fake.coulomb_energy = e.coulomb;
    fake.total_energy = e.total;
    fake.mu = 1.0;
    fake.radius = 1.0;
    CHECK(std::abs(virial_residual(fake)) > 1e-3 * e.kinetic);
}

TEST_CASE("solved limit star satisfies the stationarity identities") {
    const StarSolution sol = solve_star(ModelParams{}, 1.0);
    const double n = sol.profile.mass();

    CHECK(std::abs(sol.virial_residual) <= 1e-6 * sol.kinetic_energy);
    CHECK(sol.multiplier_residual <= 1e-6);
    CHECK(sol.total_energy < 0.0);

    // the limit stationarity chain pins E = -kappa D / 2 = -(3/7) mu N
    CHECK_THAT(sol.total_energy, WithinRel(-0.5 * sol.params.kappa * sol.coulomb_energy, 1e-8));
    CHECK_THAT(sol.total_energy, WithinRel(-(3.0 / 7.0) * sol.mu * n, 1e-8));
    // multiplier expressed through the Coulomb energy alone
    CHECK_THAT(sol.mu, WithinRel(7.0 / (6.0 * n) * sol.params.kappa * sol.coulomb_energy, 1e-6));
}

TEST_CASE("perturbing the multiplier by 1% moves the residual to about 1e-2") {
    StarSolution sol = solve_star(ModelParams{}, 1.0);
    sol.mu *= 1.01;
    const double res = multiplier_residual(sol);
    CHECK(res > 5e-3);
    CHECK(res < 2e-2);
}

TEST_CASE("solved finite-c star satisfies the identities") {
    const StarSolution sol = solve_star(ModelParams{}.with_c(8.0), 1.0);
    CHECK(std::abs(sol.virial_residual) <= 1e-6 * sol.kinetic_energy);
    CHECK(sol.multiplier_residual <= 1e-6);
    CHECK(sol.boundary_residual / sol.mu <= 1e-8);
    CHECK(sol.total_energy < 0.0);
}

TEST_CASE("running kinetic/Coulomb ratio stays positive and finite") {
    const ModelParams params{};
    const double ball_ratio = gns_ratio(uniform_ball(1.0, 1.0), params);
    CHECK(ball_ratio > 0.0);
    CHECK(std::isfinite(ball_ratio));
    CHECK_THAT(ball_ratio, WithinRel(3.022484913780912, 1e-9));

    // the ratio is invariant under both mass scaling and dilation
    CHECK_THAT(gns_ratio(uniform_ball(1.0, 1.0).dilated(5.0), params),
               WithinRel(ball_ratio, 1e-9));
    CHECK_THAT(gns_ratio(uniform_ball(3.0, 0.25), params), WithinRel(ball_ratio, 1e-9));
}

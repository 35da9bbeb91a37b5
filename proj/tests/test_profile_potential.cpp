#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "starlab/energy.hpp"
#include "starlab/potential.hpp"
#include "starlab/profile.hpp"

using namespace starlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// symmetric decreasing test profile rho = rho0 (1 - (r/R)^2)_+^(3/2): same
// C^1 free-boundary behavior as the solved stars, and closed-form mass
// pi^2 rho0 R^3 / 8.
DensityProfile bell_profile(double rho0, double radius, std::size_t nodes = 4001,
                            double pad = 1.2) {
    std::vector<double> g(nodes), v(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        g[i] = pad * radius * static_cast<double>(i) / static_cast<double>(nodes - 1);
        const double x = g[i] / radius;
        v[i] = g[i] < radius ? rho0 * std::pow(1.0 - x * x, 1.5) : 0.0;
    }
    return DensityProfile(std::move(g), std::move(v), radius);
}

}  // namespace

TEST_CASE("profile validation rejects malformed input") {
    std::vector<double> g{0.0, 1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(DensityProfile(g, {1.0, 1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(DensityProfile({1.0, 2.0, 3.0, 4.0, 5.0}, {1, 1, 1, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DensityProfile({0.0, 1.0, 2.0, 3.5, 4.0}, {1, 1, 1, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DensityProfile(g, {1.0, 1.0, -0.5, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(DensityProfile(g, {1.0, 1.0, 2.0, 1.0, 1.0}), std::invalid_argument);
    // nonzero value beyond the declared support
    CHECK_THROWS_AS(DensityProfile(g, {1.0, 1.0, 1.0, 1.0, 0.5}, 2.0), std::invalid_argument);
}

TEST_CASE("uniform ball: mass, interpolation, dilation") {
    const DensityProfile ball = uniform_ball(1.0, 1.0);
    CHECK_THAT(ball.mass(), WithinRel(1.0, 1e-13));
    CHECK_THAT(ball.value_at(0.3), WithinRel(3.0 / (4.0 * kPi), 1e-10));
    CHECK(ball.value_at(1.0) == 0.0);
    CHECK(ball.value_at(5.0) == 0.0);
    CHECK_THAT(ball.support_radius(), WithinRel(1.0, 1e-15));

    const DensityProfile big = ball.dilated(8.0);
    CHECK_THAT(big.mass(), WithinRel(8.0, 1e-12));
    CHECK_THAT(big.support_radius(), WithinRel(0.5, 1e-13));
    CHECK_THAT(big.sup_density(), WithinRel(64.0 * ball.sup_density(), 1e-13));
}

TEST_CASE("uniform ball potential: classical closed values") {
    // rho = 1 on r <= 1: V(0) = 2 pi, V(1/2) = 11 pi / 6, V(r>=1) = (4 pi/3)/r
    const double rho0 = 1.0;
    const std::size_t n = 4001;
    std::vector<double> g(n), v(n, rho0);
    for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<double>(i) / (n - 1);
    const DensityProfile ball(std::move(g), std::move(v), 1.0);
    CHECK_THAT(ball.mass(), WithinRel(4.0 * kPi / 3.0, 1e-13));

    const RadialPotential pot = newton_potential(ball);
    CHECK_THAT(pot.values.front(), WithinRel(2.0 * kPi, 1e-12));
    CHECK_THAT(pot.values[2000], WithinRel(11.0 * kPi / 6.0, 1e-12));
    CHECK_THAT(pot.values.back(), WithinRel(4.0 * kPi / 3.0, 1e-12));
    CHECK_THAT(pot.exterior(2.0), WithinRel(2.0 * kPi / 3.0, 1e-12));
    CHECK_THAT(pot.mass, WithinRel(ball.mass(), 1e-12));
}

TEST_CASE("newton potential is monotone with the exterior law on the tail") {
    const DensityProfile prof = bell_profile(2.0, 1.0);
    const RadialPotential pot = newton_potential(prof);
    const double n = prof.mass();
    // closed-form bell mass: pi^2 rho0 R^3 / 8. The bell's edge curvature is
    // O(1), so the quadrature carries a few 1e-9 here; solver profiles have
    // edge coefficients orders of magnitude smaller and reach 1e-10 (checked
    // on a solved star below).
    CHECK_THAT(n, WithinRel(kPi * kPi * 2.0 / 8.0, 1e-8));
    for (std::size_t i = 1; i < pot.values.size(); ++i) {
        CHECK(pot.values[i] <= pot.values[i - 1] * (1.0 + 1e-13));
        // r V(r) <= N with equality beyond the support
        CHECK(prof.grid()[i] * pot.values[i] <= n * (1.0 + 1e-8));
        if (prof.grid()[i] >= prof.support_radius())
            CHECK_THAT(prof.grid()[i] * pot.values[i], WithinRel(n, 1e-8));
    }
    CHECK_THROWS_AS(newton_potential(std::vector<double>{0.0, 1.0},
                                     std::vector<double>{1.0, 0.0}, 1.0),
                    std::domain_error);
}

TEST_CASE("coulomb energy: uniform sphere value and dilation covariance") {
    CHECK_THAT(coulomb_energy(uniform_ball(1.0, 1.0)), WithinRel(0.6, 1e-12));

    // mass-preserving dilation rho_lambda(x) = lambda^3 rho(lambda x) scales D by lambda
    const DensityProfile prof = bell_profile(2.0, 1.0);
    const double lambda = 2.7;
    const std::size_t n = prof.size();
    std::vector<double> g(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = prof.grid()[i] / lambda;
        v[i] = lambda * lambda * lambda * prof.values()[i];
    }
    const DensityProfile squeezed(std::move(g), std::move(v), prof.support_radius() / lambda);
    CHECK_THAT(squeezed.mass(), WithinRel(prof.mass(), 1e-12));
    CHECK_THAT(coulomb_energy(squeezed), WithinRel(lambda * coulomb_energy(prof), 1e-8));
}

TEST_CASE("zero profile has zero potential energy and no kinetic/Coulomb ratio") {
    std::vector<double> g(101), v(101, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<double>(i) / 100.0;
    const DensityProfile zero(std::move(g), std::move(v));
    CHECK(zero.mass() == 0.0);
    CHECK(coulomb_energy(zero) == 0.0);
    const EnergyBreakdown e = total_energy(zero, ModelParams{});
    CHECK(e.kinetic == 0.0);
    CHECK(e.coulomb == 0.0);
    CHECK(e.total == 0.0);
    CHECK_THROWS_AS(gns_ratio(zero, ModelParams{}), std::domain_error);
}

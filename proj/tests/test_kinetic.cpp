#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "starlab/kinetic.hpp"

using namespace starlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const ModelParams unit_c1{1.0, 1.0, 1.0, 1.0};
const ModelParams unit_limit{};
}  // namespace

TEST_CASE("dispersion: closed values and monotonicity") {
    CHECK(dispersion(0.0, unit_c1) == 0.0);
    CHECK(dispersion(0.0, unit_limit) == 0.0);
    CHECK_THAT(dispersion(1.0, unit_c1), WithinRel(std::sqrt(2.0) - 1.0, 1e-15));
    CHECK_THAT(dispersion(2.0, unit_limit), WithinRel(2.0, 1e-15));

    double prev = 0.0;
    for (double p = 0.125; p <= 64.0; p *= 2.0) {
        const double t = dispersion(p, unit_c1);
        CHECK(t > prev);
        prev = t;
    }
    CHECK_THROWS_AS(dispersion(-1.0, unit_c1), std::domain_error);
    CHECK_THROWS_AS(dispersion(1.0, ModelParams{-1.0, 1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("dispersion: nonrelativistic gap sandwich at c = 10") {
    const ModelParams p10 = unit_limit.with_c(10.0);
    const double gap = 0.5 - dispersion(1.0, p10);
    CHECK_THAT(gap, WithinRel(1.2437887910972667e-3, 1e-12));
    CHECK(gap >= 1.0 / 1600.0);
    CHECK(gap <= 1.0 / 800.0);
    CHECK_THAT(dispersion_gap(1.0, p10), WithinRel(gap, 1e-10));
}

TEST_CASE("inverse dispersion: closed values and round trip") {
    CHECK(inverse_dispersion(0.0, unit_c1) == 0.0);
    CHECK(inverse_dispersion(0.0, unit_limit) == 0.0);

    // w = 1 at c = 1 puts the Fermi momentum at sqrt(3)
    const double rho = inverse_dispersion(1.0, unit_c1);
    CHECK_THAT(unit_c1.fermi_momentum(rho), WithinRel(std::sqrt(3.0), 1e-14));
    CHECK_THAT(rho, WithinRel(std::pow(3.0, 1.5) / (6.0 * kPi * kPi), 1e-14));

    const double rho_lim = inverse_dispersion(2.0, unit_limit);
    CHECK_THAT(unit_limit.fermi_momentum(rho_lim), WithinRel(2.0, 1e-14));
    CHECK_THAT(rho_lim, WithinRel(8.0 / (6.0 * kPi * kPi), 1e-14));

    CHECK_THROWS_AS(inverse_dispersion(-0.1, unit_c1), std::domain_error);

    for (double c : {1.0, 64.0, 1e4, kLimitC}) {
        const ModelParams p = unit_limit.with_c(c);
        for (int k = -8; k <= 8; ++k) {
            const double w = std::pow(10.0, k);
            const double eta = p.fermi_momentum(inverse_dispersion(w, p));
            CHECK_THAT(dispersion(eta, p), WithinRel(w, 1e-12));
        }
    }
}

TEST_CASE("kinetic density matches the quadrature oracle") {
    CHECK(kinetic_density(0.0, unit_c1) == 0.0);
    const ModelParams p2 = unit_limit.with_c(2.0);
    CHECK_THAT(kinetic_density(1.0, p2),
               WithinRel(oracles::kinetic_density_quadrature(1.0, p2), 1e-10));

    // polytropic limit law
    CHECK_THAT(kinetic_density(2.0, unit_limit),
               WithinRel(0.3 * unit_limit.a0() * std::pow(2.0, 5.0 / 3.0), 1e-14));
    CHECK_THROWS_AS(kinetic_density(-1.0, p2), std::domain_error);
}

TEST_CASE("companion density matches the quadrature oracle and rejects the limit") {
    const ModelParams p2 = unit_limit.with_c(2.0);
    CHECK(kinetic_density_bar(0.0, p2) == 0.0);
    CHECK_THAT(kinetic_density_bar(1.0, p2),
               WithinRel(oracles::kinetic_density_bar_quadrature(1.0, p2), 1e-10));
    CHECK_THROWS_AS(kinetic_density_bar(1.0, unit_limit), UnsupportedModelError);
    CHECK_THROWS_AS(kinetic_defect_density(1.0, unit_limit), UnsupportedModelError);
}

TEST_CASE("limit gap shrinks like 1/c^2") {
    auto gap = [&](double rho, double c) {
        return kinetic_density(rho, unit_limit) - kinetic_density(rho, unit_limit.with_c(c));
    };
    // at rho = 1 the Fermi ball is still relativistic at c = 10; the exact
    // two-evaluation ratio sits below the asymptotic factor 4
    CHECK_THAT(gap(1.0, 10.0) / gap(1.0, 20.0), WithinRel(3.836111053767862, 1e-9));
    // deep in the asymptotic regime the factor 4 emerges
    CHECK_THAT(gap(1e-3, 10.0) / gap(1e-3, 20.0), WithinAbs(4.0, 0.1));
}

TEST_CASE("defect density is nonnegative and ties the three kernels together") {
    for (double c : {1.0, 2.0, 64.0, 1e4}) {
        const ModelParams p = unit_limit.with_c(c);
        for (int k = -12; k <= 6; ++k) {
            const double rho = std::pow(10.0, k);
            const double defect = kinetic_defect_density(rho, p);
            CHECK(defect >= 0.0);
            // against the parts, where the parts do not cancel badly
            const double mc2 = p.m * c * c;
            const double parts =
                kinetic_density(rho, p) + mc2 * mc2 * kinetic_density_bar(rho, p) - mc2 * rho;
            if (parts > 1e-6 * mc2 * rho) CHECK_THAT(defect, WithinRel(parts, 1e-6));
        }
    }
}

TEST_CASE("series and closed form agree across the switch point") {
    // pick (rho, c) pairs with eta/(mc) straddling the switch at 0.5
    for (double t : {0.05, 0.2, 0.49, 0.4999, 0.5001, 0.51, 0.8, 2.0}) {
        const double c = 3.0;
        const ModelParams p = unit_limit.with_c(c);
        const double eta = t * p.m * c;
        const double rho = p.density_from_fermi_momentum(eta);
        CHECK_THAT(kinetic_density(rho, p),
                   WithinRel(oracles::kinetic_density_quadrature(rho, p), 5e-12));
        CHECK_THAT(kinetic_density_bar(rho, p),
                   WithinRel(oracles::kinetic_density_bar_quadrature(rho, p), 5e-12));
    }
}

TEST_CASE("operator lower bound at zero momentum and at the branch point") {
    // p = 0: H = delta >= 0 with slack delta
    CHECK(dispersion(0.0, unit_c1) + 0.7 >= 0.0);

    // p = 2 m c at m = 1, c = 3, delta = 1: both branch slopes hold
    const ModelParams p3 = unit_limit.with_c(3.0);
    const double p = 2.0 * p3.m * p3.c;
    const double lhs = dispersion(p, p3) + 1.0;
    const double b_small = 2.0 / std::sqrt(2.0 * std::sqrt(5.0));
    const double b_large = p3.c / 2.0;
    CHECK_THAT(lhs, WithinRel(std::sqrt(405.0) - 9.0 + 1.0, 1e-14));
    CHECK(lhs >= b_small * p);
    CHECK(lhs >= b_large * p);
    CHECK(lhs >= dispersion_lower_slope(1.0, p3) * p);
}

TEST_CASE("operator inequality property run is violation-free") {
    const BoundCheckReport report = dispersion_bound_check(100000, 42);
    CHECK(report.samples == 100000);
    CHECK(report.worst_violation <= 1e-12);

    CHECK_THROWS_AS(dispersion_bound_check(0, 42), std::invalid_argument);
    BoundCheckRanges bad;
    bad.c_min = 0.5;  // sandwich requires c > 1
    CHECK_THROWS_AS(dispersion_bound_check(10, 42, bad), std::invalid_argument);
}

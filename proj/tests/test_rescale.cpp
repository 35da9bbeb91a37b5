#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "starlab/rescale.hpp"

using namespace starlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("rescaling to the same mass is the identity") {
    const StarSolution sol = solve_star(ModelParams{}, 1.0);
    const StarSolution same = limit_rescale(sol, sol.profile.mass());
    CHECK_THAT(same.mu, WithinRel(sol.mu, 1e-14));
    CHECK_THAT(same.radius, WithinRel(sol.radius, 1e-14));
    CHECK_THAT(same.total_energy, WithinRel(sol.total_energy, 1e-12));
}

TEST_CASE("rescaling by 8 halves the radius and sixteenfolds the multiplier") {
    const StarSolution sol = solve_star(ModelParams{}, 1.0);
    const StarSolution big = limit_rescale(sol, 8.0);

    // the transformation itself is exact in the actual mass ratio ...
    const double beta = big.profile.mass() / sol.profile.mass();
    CHECK_THAT(big.radius, WithinRel(std::pow(beta, -1.0 / 3.0) * sol.radius, 1e-13));
    CHECK_THAT(big.mu, WithinRel(std::pow(beta, 4.0 / 3.0) * sol.mu, 1e-13));
    CHECK_THAT(big.profile.sup_density(),
               WithinRel(beta * beta * sol.profile.sup_density(), 1e-13));

    // ... and the headline exponents hold within the mass-solve tolerance
    CHECK_THAT(big.radius, WithinRel(0.5 * sol.radius, 1e-9));
    CHECK_THAT(big.mu, WithinRel(16.0 * sol.mu, 1e-9));
    CHECK_THAT(big.profile.sup_density(), WithinRel(64.0 * sol.profile.sup_density(), 1e-9));
    CHECK_THAT(big.total_energy, WithinRel(std::pow(8.0, 7.0 / 3.0) * sol.total_energy, 1e-8));
    CHECK_THAT(big.profile.mass(), WithinRel(8.0, 1e-9));
}

TEST_CASE("identities are preserved under exact rescaling") {
    const StarSolution sol = solve_star(ModelParams{}, 1.0);
    const StarSolution big = limit_rescale(sol, 8.0);
    const double normalized_before = sol.virial_residual / sol.kinetic_energy;
    const double normalized_after = big.virial_residual / big.kinetic_energy;
    CHECK_THAT(normalized_after, WithinAbs(normalized_before, 1e-12));
    CHECK(big.multiplier_residual <= sol.multiplier_residual + 1e-12);
}

TEST_CASE("a solved star at double mass equals the rescaled unit star") {
    const StarSolution unit = solve_star(ModelParams{}, 1.0);
    const StarSolution direct = solve_star(ModelParams{}, 2.0);
    const StarSolution scaled = limit_rescale(unit, 2.0);
    const BackendDiff diff = compare_backends(direct, scaled);
    CHECK(diff.sup_density <= 1e-8);
    CHECK(diff.mu <= 1e-8);
    CHECK(diff.radius <= 1e-8);
    CHECK(diff.energy <= 1e-8);
}

TEST_CASE("finite-c solutions admit no exact mass covariance") {
    const StarSolution sol = solve_star(ModelParams{}.with_c(8.0), 1.0);
    CHECK_THROWS_AS(limit_rescale(sol, 2.0), UnsupportedModelError);
}

TEST_CASE("speed-of-light rescaling identity") {
    // at c = 1 the identity is tautological and must come out exactly zero
    CHECK(verify_c_scaling(ModelParams{}, 1.0, 1.0) == 0.0);
    CHECK(verify_c_scaling(ModelParams{}, 1.0, 4.0) <= 1e-6);
    CHECK_THROWS_AS(verify_c_scaling(ModelParams{}, 1.0, kLimitC), std::invalid_argument);
}

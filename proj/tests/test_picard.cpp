#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "starlab/picard.hpp"
#include "starlab/solver.hpp"

using namespace starlab;
using Catch::Matchers::WithinRel;

TEST_CASE("fixed-point and shooting backends agree on the limit star") {
    const ModelParams params{};
    const StarSolution shoot = solve_star(params, 1.0);
    const StarSolution picard = picard_solve(params, 1.0);
    CHECK(picard.backend == "PICARD");
    CHECK(picard.iterations <= 500);

    const BackendDiff diff = compare_backends(shoot, picard);
    CHECK(diff.sup_density <= 1e-6);
    CHECK(diff.mu <= 1e-8);
    CHECK(diff.radius <= 1e-8);
    CHECK(diff.energy <= 1e-8);
}

TEST_CASE("fixed-point iteration settles immediately on an exact solution") {
    const ModelParams params{};
    const StarSolution shoot = solve_star(params, 1.0);
    const StarSolution warm = picard_solve(params, 1.0, {}, &shoot.profile);
    CHECK(warm.iterations <= 2);
    CHECK_THAT(warm.mu, WithinRel(shoot.mu, 1e-7));
}

TEST_CASE("fixed-point identities hold at finite c") {
    const StarSolution sol = picard_solve(ModelParams{}.with_c(8.0), 1.0);
    CHECK(std::abs(sol.virial_residual) <= 1e-6 * sol.kinetic_energy);
    CHECK(sol.multiplier_residual <= 1e-6);
    CHECK(sol.boundary_residual / sol.mu <= 1e-8);
    CHECK(sol.total_energy < 0.0);
    CHECK_THAT(sol.profile.mass(), WithinRel(1.0, 1e-8));
}

TEST_CASE("fixed-point backend classifies supercritical targets") {
    SolverConfig coarse;
    coarse.picard_max_iters = 60;  // the classification probe decides, not the sweep cap
    CHECK_THROWS_AS(picard_solve(ModelParams{}.with_c(2.0), 1e9, coarse), CriticalMassError);
}

TEST_CASE("reconciling dispatcher tags and validates") {
    SolverConfig both;
    both.backend = Backend::Both;
    const StarSolution sol = solve(ModelParams{}, 1.0, both);
    CHECK(sol.backend == "BOTH");

    SolverConfig picard_only;
    picard_only.backend = Backend::Picard;
    CHECK(solve(ModelParams{}, 1.0, picard_only).backend == "PICARD");

    CHECK_THROWS_AS(picard_solve(ModelParams{}, 0.0), std::invalid_argument);
}

#include <catch_amalgamated.hpp>

#include <cmath>

#include "kratzer/oracle.hpp"

using namespace kratzer;
using Catch::Matchers::WithinRel;

namespace {
const KratzerParams canonical(-2.0, 1.0, 1.0);
const KratzerParams coulomb(-1.0, 0.0, 1.0);
} // namespace

TEST_CASE("oracle: canonical spectrum to 1e-6 relative") {
    auto res = oracle::solve_bound_states(canonical, 0, 3);
    REQUIRE(res.energies.size() == 3);
    CHECK_THAT(res.energies[0], WithinRel(-0.5, 1e-6));
    CHECK_THAT(res.energies[1], WithinRel(-2.0 / 9.0, 1e-6));
    CHECK_THAT(res.energies[2], WithinRel(-0.125, 1e-6));
    for (double err : res.estimated_error)
        CHECK(err < 1e-5);
    for (std::size_t k = 0; k < res.states.size(); ++k)
        CHECK(oracle::node_count(res.states[k]) == static_cast<int>(k));
}

TEST_CASE("oracle: hydrogenic spectrum in the Coulomb limit") {
    auto res = oracle::solve_bound_states(coulomb, 0, 2);
    CHECK_THAT(res.energies[0], WithinRel(-0.5, 1e-5));
    CHECK_THAT(res.energies[1], WithinRel(-0.125, 1e-5));
}

TEST_CASE("oracle: l = 1 ground state against the closed radical form") {
    auto res = oracle::solve_bound_states(canonical, 1, 1);
    CHECK_THAT(res.energies[0], WithinRel(-0.3048058983988962, 1e-6));
}

TEST_CASE("oracle: box too small raises box_error with a suggestion") {
    oracle::GridSpec spec;
    spec.r_max = 2.0;
    spec.points = 4000;
    CHECK_THROWS_AS(oracle::solve_bound_states(coulomb, 0, 3, spec), box_error);
}

TEST_CASE("oracle: extrapolated energies stable under grid halving") {
    oracle::GridSpec coarse_pair;
    coarse_pair.points = 10000;
    oracle::GridSpec fine_pair;
    fine_pair.points = 20000;
    auto a = oracle::solve_bound_states(canonical, 0, 3, coarse_pair);
    auto b = oracle::solve_bound_states(canonical, 0, 3, fine_pair);
    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(a.energies[k] - b.energies[k]) / std::abs(b.energies[k]) < 1e-8);
}

TEST_CASE("oracle: ground energy decreases monotonically as the box grows") {
    std::vector<double> e;
    for (double rmax : {8.0, 12.0, 16.0, 20.0}) {
        oracle::GridSpec spec;
        spec.r_max = rmax;
        spec.points = 12000;
        e.push_back(oracle::solve_bound_states(canonical, 0, 1, spec).energies[0]);
    }
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
        CHECK(e[i] > e[i + 1]);
    // converged toward the closed-form value from above
    CHECK(std::abs(e.back() + 0.5) < std::abs(e.front() + 0.5));
    CHECK_THAT(e.back(), WithinRel(-0.5, 1e-6));
}

TEST_CASE("compare_spectrum: canonical table passes, corrupted row is flagged") {
    auto table = spectrum::spectrum_table(canonical, 2, 0);
    auto res = oracle::solve_bound_states(canonical, 0, 3);
    auto report = oracle::compare_spectrum(canonical, table, res);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.all_pass);
    for (const auto& row : report.rows) {
        CHECK(row.energy_rel_error < 1e-6);
        CHECK(row.overlap_deficit < 1e-6);
    }

    table[1].energy += 1e-3;
    auto flagged = oracle::compare_spectrum(canonical, table, res);
    CHECK_FALSE(flagged.all_pass);
    CHECK(flagged.rows[0].pass);
    CHECK_FALSE(flagged.rows[1].pass);
    CHECK(flagged.rows[2].pass);
}

TEST_CASE("compare_spectrum: oracle must cover the table") {
    auto table = spectrum::spectrum_table(canonical, 3, 0);
    auto res = oracle::solve_bound_states(canonical, 0, 2);
    CHECK_THROWS_AS(oracle::compare_spectrum(canonical, table, res), usage_error);
}

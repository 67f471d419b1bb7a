#include <catch_amalgamated.hpp>

#include <cmath>

#include "kratzer/adjoint.hpp"

using namespace kratzer;
using adjoint::Matrix3;

namespace {
bool equal(const Matrix3& a, const Matrix3& b) {
    return (a - b).max_abs() == 0.0;
}

Matrix3 from_rows(std::array<std::array<double, 3>, 3> rows) {
    Matrix3 m;
    m.m = rows;
    return m;
}
} // namespace

TEST_CASE("adjoint generators are the canonical matrices") {
    CHECK(equal(adjoint::adjoint_generator(1),
                from_rows({{{0, 0, 0}, {0, 0, -1}, {0, -1, 0}}})));
    CHECK(equal(adjoint::adjoint_generator(2),
                from_rows({{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}})));
    CHECK(equal(adjoint::adjoint_generator(3),
                from_rows({{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}})));
    CHECK_THROWS_AS(adjoint::adjoint_generator(0), domain_error);
}

TEST_CASE("adjoint commutators close in the no-prefactor convention") {
    auto t1 = adjoint::adjoint_generator(1);
    auto t2 = adjoint::adjoint_generator(2);
    auto t3 = adjoint::adjoint_generator(3);
    CHECK(equal(adjoint::commutator(t1, t2), t3 * -1.0));
    CHECK(equal(adjoint::commutator(t2, t3), t1));
    CHECK(equal(adjoint::commutator(t3, t1), t2));
}

TEST_CASE("generators preserve the indefinite metric") {
    auto eta = adjoint::metric();
    for (int axis : {1, 2, 3}) {
        auto t = adjoint::adjoint_generator(axis);
        CHECK((t.transpose() * eta + eta * t).max_abs() == 0.0);
    }
}

TEST_CASE("finite transformations carry the generator into the entries") {
    const double e = 0.25;
    CHECK(equal(adjoint::finite_transformation(e, 1),
                from_rows({{{1, 0, 0}, {0, 1, -e}, {0, -e, 1}}})));
    CHECK(equal(adjoint::finite_transformation(e, 2),
                from_rows({{{1, 0, e}, {0, 1, 0}, {e, 0, 1}}})));
    CHECK(equal(adjoint::finite_transformation(e, 3),
                from_rows({{{1, -e, 0}, {e, 1, 0}, {0, 0, 1}}})));
    CHECK(equal(adjoint::finite_transformation(0.0, 3), Matrix3::identity()));
    CHECK_THROWS_AS(adjoint::finite_transformation(1.0, 3), domain_error);
}

TEST_CASE("first-order transformation agrees with the truncated exponential") {
    const double e = 1e-3;
    for (int axis : {1, 2, 3}) {
        auto t = adjoint::adjoint_generator(axis);
        auto series = Matrix3::identity() + t * e + (t * t) * (e * e / 2.0);
        auto lin = adjoint::finite_transformation(e, axis);
        CHECK((series - lin).max_abs() < e * e);
        CHECK((series - lin).max_abs() > 0.0); // the quadratic term is real
    }
}

TEST_CASE("coordinate commutator table holds the canonical brackets") {
    auto table = adjoint::coordinate_commutators();
    // [T1,x]=0, [T1,y]=z, [T1,z]=y
    CHECK(table.target_of(1, 1) == 0);
    CHECK(table.target_of(1, 2) == 3);
    CHECK(table.target_of(1, 3) == 2);
    // [T2,x]=-z, [T2,y]=0, [T2,z]=-x
    CHECK(table.target_of(2, 1) == -3);
    CHECK(table.target_of(2, 2) == 0);
    CHECK(table.target_of(2, 3) == -1);
    // [T3,x]=y, [T3,y]=-x, [T3,z]=0
    CHECK(table.target_of(3, 1) == 2);
    CHECK(table.target_of(3, 2) == -1);
    CHECK(table.target_of(3, 3) == 0);
    CHECK_THROWS_AS(table.target_of(4, 1), domain_error);
}

TEST_CASE("coordinate commutators are the negative transpose read of the adjoint") {
    auto table = adjoint::coordinate_commutators();
    for (int axis : {1, 2, 3}) {
        auto m = table.coefficient_matrix(axis);
        auto t = adjoint::adjoint_generator(axis);
        CHECK((m + t.transpose()).max_abs() == 0.0);
    }
}

TEST_CASE("table reproduces the first-order action of R(eps; n)") {
    // r_i + eps [r_i, T] = sum_j R_ij r_j with R = I + eps T, i.e.
    // [T, r_i] = -sum_j T_ij r_j; expand both sides in the coordinate basis.
    auto table = adjoint::coordinate_commutators();
    for (int axis : {1, 2, 3}) {
        auto t = adjoint::adjoint_generator(axis);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double bracket = table.coefficient_matrix(axis)(j, i);
                CHECK(bracket == -t(i, j));
            }
    }
}

TEST_CASE("coefficient read with and without the i hbar prefactor") {
    auto table = adjoint::coordinate_commutators();
    CHECK(table.coefficient(3, 1, false) == std::complex<double>(1.0, 0.0));
    CHECK(table.coefficient(3, 1, true) == std::complex<double>(0.0, 1.0));
    CHECK(table.coefficient(3, 2, true) == std::complex<double>(0.0, -1.0));
    CHECK(table.coefficient(3, 3, true) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("selection rules: z freezes n, x and y shift it by one") {
    auto rules = adjoint::selection_rules();
    CHECK(rules.at("z") == std::set<int>{0});
    CHECK(rules.at("x") == std::set<int>{-1, 1});
    CHECK(rules.at("y") == std::set<int>{-1, 1});
    std::set<int> all;
    for (const auto& [coord, set] : rules)
        all.insert(set.begin(), set.end());
    CHECK(all == std::set<int>{-1, 0, 1});
}

TEST_CASE("selection-rule engine scales with the commutator table") {
    // doubled pair: [G,x] = 2 i hbar y, [G,y] = -2 i hbar x -> |dn| = 2
    Matrix3 m;
    m(1, 0) = 2.0;
    m(0, 1) = -2.0;
    auto shifts = adjoint::allowed_shifts(m);
    CHECK(shifts[0] == std::set<double>{-2.0, 2.0});
    CHECK(shifts[1] == std::set<double>{-2.0, 2.0});
    CHECK(shifts[2] == std::set<double>{0.0});
}

TEST_CASE("selection-rule engine marks non-real channels as forbidden") {
    // [G, c] = 2 i hbar c for a single coordinate: no real shift exists
    Matrix3 m;
    m(0, 0) = 2.0;
    auto shifts = adjoint::allowed_shifts(m);
    CHECK(shifts[0].empty());
}

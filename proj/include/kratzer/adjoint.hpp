#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kratzer/constants.hpp"
#include "kratzer/errors.hpp"

namespace kratzer::adjoint {

/// Dense 3x3 real matrix with exact integer-valued entries for the
/// generator/transformation algebra of this module.
struct Matrix3 {
    std::array<std::array<double, 3>, 3> m{};

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }

    static Matrix3 identity() {
        Matrix3 r;
        for (int i = 0; i < 3; ++i)
            r(i, i) = 1.0;
        return r;
    }

    Matrix3 operator*(const Matrix3& rhs) const {
        Matrix3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double acc = 0.0;
                for (int k = 0; k < 3; ++k)
                    acc += m[i][k] * rhs.m[k][j];
                r(i, j) = acc;
            }
        return r;
    }

    Matrix3 operator+(const Matrix3& rhs) const {
        Matrix3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = m[i][j] + rhs.m[i][j];
        return r;
    }

    Matrix3 operator-(const Matrix3& rhs) const {
        Matrix3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = m[i][j] - rhs.m[i][j];
        return r;
    }

    Matrix3 operator*(double s) const {
        Matrix3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = s * m[i][j];
        return r;
    }

    Matrix3 transpose() const {
        Matrix3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = m[j][i];
        return r;
    }

    double max_abs() const {
        double worst = 0.0;
        for (const auto& row : m)
            for (double v : row)
                worst = std::max(worst, std::abs(v));
        return worst;
    }
};

inline Matrix3 commutator(const Matrix3& a, const Matrix3& b) {
    return a * b - b * a;
}

/// Adjoint generators in the no-prefactor convention:
/// [T1,T2] = -T3, [T2,T3] = T1, [T3,T1] = T2.
inline Matrix3 adjoint_generator(int axis) {
    Matrix3 t;
    switch (axis) {
    case 1:
        t(1, 2) = -1.0;
        t(2, 1) = -1.0;
        return t;
    case 2:
        t(0, 2) = 1.0;
        t(2, 0) = 1.0;
        return t;
    case 3:
        t(0, 1) = -1.0;
        t(1, 0) = 1.0;
        return t;
    default:
        throw domain_error("adjoint_generator: axis must be 1, 2, or 3");
    }
}

/// Minkowski-type metric preserved by the group, diag(1, 1, -1).
inline Matrix3 metric() {
    Matrix3 eta;
    eta(0, 0) = 1.0;
    eta(1, 1) = 1.0;
    eta(2, 2) = -1.0;
    return eta;
}

/// First-order finite transformation R(eps; axis) = I + eps T_axis.
inline Matrix3 finite_transformation(double epsilon, int axis) {
    if (!(std::abs(epsilon) < 1.0))
        throw domain_error("finite_transformation: |epsilon| must be below 1");
    return Matrix3::identity() + adjoint_generator(axis) * epsilon;
}

/// Commutators [T_i, x_j] = sum_k c_ijk x_k in the no-prefactor convention.
/// Stored as a signed target index per (generator, coordinate): e.g. the
/// entry (1, 2) = +3 encodes [T1, y] = z and 0 encodes a vanishing bracket.
/// With the prefactor restored the bracket reads [T_i, x_j] = i hbar c x_k.
struct CoordinateCommutatorTable {
    // [generator-1][coordinate-1] -> signed coordinate index in {-3..3}
    std::array<std::array<int, 3>, 3> target{};

    int target_of(int generator, int coordinate) const {
        if (generator < 1 || generator > 3 || coordinate < 1 || coordinate > 3)
            throw domain_error("CoordinateCommutatorTable: indices must be 1..3");
        return target[generator - 1][coordinate - 1];
    }

    /// Coefficient matrix M of one generator: [T, x_j] = sum_k M(k, j) x_k.
    Matrix3 coefficient_matrix(int generator) const {
        Matrix3 m;
        for (int j = 1; j <= 3; ++j) {
            const int t = target_of(generator, j);
            if (t != 0)
                m(std::abs(t) - 1, j - 1) = t > 0 ? 1.0 : -1.0;
        }
        return m;
    }

    /// Bracket coefficient with the physical i hbar prefactor restored.
    std::complex<double> coefficient(int generator, int coordinate, bool with_prefactor,
                                     double hbar = units::hbar) const {
        const int t = target_of(generator, coordinate);
        if (t == 0)
            return {0.0, 0.0};
        const double sign = t > 0 ? 1.0 : -1.0;
        return with_prefactor ? std::complex<double>(0.0, sign * hbar)
                              : std::complex<double>(sign, 0.0);
    }
};

/// The coordinate commutators of all three generators with (x, y, z).
inline CoordinateCommutatorTable coordinate_commutators() {
    CoordinateCommutatorTable t;
    t.target = {{
        {{0, 3, 2}},   // [T1,x] = 0,  [T1,y] = z,  [T1,z] = y
        {{-3, 0, -1}}, // [T2,x] = -z, [T2,y] = 0,  [T2,z] = -x
        {{2, -1, 0}},  // [T3,x] = y,  [T3,y] = -x, [T3,z] = 0
    }};
    return t;
}

namespace detail {

// Monic minimal polynomial of M^T on the cyclic subspace generated by e_j,
// found by Gaussian elimination on the Krylov vectors. Coefficients
// ascending; for integer tables the arithmetic is exact in doubles.
inline std::vector<double> cyclic_minimal_polynomial(const Matrix3& mt, int j) {
    std::vector<std::array<double, 3>> krylov;
    std::array<double, 3> v{};
    v[static_cast<std::size_t>(j)] = 1.0;
    for (int step = 0; step <= 3; ++step) {
        // try to write v as a combination of the previous Krylov vectors
        std::vector<std::array<double, 4>> rows; // augmented system, columns = krylov
        for (int r = 0; r < 3; ++r) {
            std::array<double, 4> row{};
            for (std::size_t c = 0; c < krylov.size(); ++c)
                row[c] = krylov[c][static_cast<std::size_t>(r)];
            row[3] = v[static_cast<std::size_t>(r)];
            rows.push_back(row);
        }
        std::vector<double> coeff(krylov.size(), 0.0);
        bool solvable = true;
        std::size_t lead = 0;
        for (std::size_t col = 0; col < krylov.size() && lead < rows.size(); ++col) {
            std::size_t piv = lead;
            for (std::size_t r = lead + 1; r < rows.size(); ++r)
                if (std::abs(rows[r][col]) > std::abs(rows[piv][col]))
                    piv = r;
            if (std::abs(rows[piv][col]) < 1e-12)
                continue;
            std::swap(rows[piv], rows[lead]);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r == lead)
                    continue;
                const double fac = rows[r][col] / rows[lead][col];
                for (std::size_t c = col; c < 4; ++c)
                    rows[r][c] -= fac * rows[lead][c];
            }
            ++lead;
        }
        // back-substitute and check residual
        {
            std::size_t row_idx = 0;
            for (std::size_t col = 0; col < krylov.size(); ++col) {
                if (row_idx < rows.size() && std::abs(rows[row_idx][col]) > 1e-12) {
                    coeff[col] = rows[row_idx][3] / rows[row_idx][col];
                    ++row_idx;
                }
            }
            for (int r = 0; r < 3; ++r) {
                double acc = 0.0;
                for (std::size_t c = 0; c < krylov.size(); ++c)
                    acc += coeff[c] * krylov[c][static_cast<std::size_t>(r)];
                if (std::abs(acc - v[static_cast<std::size_t>(r)]) > 1e-9)
                    solvable = false;
            }
        }
        if (solvable && step > 0) {
            // v = (M^T)^step e_j = sum coeff_i (M^T)^i e_j
            std::vector<double> poly(static_cast<std::size_t>(step) + 1, 0.0);
            poly.back() = 1.0;
            for (std::size_t i = 0; i < coeff.size(); ++i)
                poly[i] = -coeff[i];
            return poly;
        }
        krylov.push_back(v);
        std::array<double, 3> next{};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                next[static_cast<std::size_t>(r)] += mt(r, c) * v[static_cast<std::size_t>(c)];
        v = next;
    }
    throw consistency_error("cyclic_minimal_polynomial: no dependence found by degree 3");
}

// Roots of a monic polynomial of degree 1..3 with real coefficients.
inline std::vector<std::complex<double>> monic_roots(const std::vector<double>& poly) {
    using cd = std::complex<double>;
    const std::size_t deg = poly.size() - 1;
    if (deg == 1)
        return {cd(-poly[0], 0.0)};
    if (deg == 2) {
        const cd disc = std::sqrt(cd(poly[1] * poly[1] - 4.0 * poly[0], 0.0));
        return {(-poly[1] + disc) / 2.0, (-poly[1] - disc) / 2.0};
    }
    if (deg == 3) {
        // depressed cubic via t = s - b/3
        const double b = poly[2], c = poly[1], d = poly[0];
        const double pp = c - b * b / 3.0;
        const double qq = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
        const cd inner = std::sqrt(cd(qq * qq / 4.0 + pp * pp * pp / 27.0, 0.0));
        const cd u = std::pow(-qq / 2.0 + inner, 1.0 / 3.0);
        const cd v = (std::abs(u) > 1e-300) ? -pp / (3.0 * u) : cd(0.0, 0.0);
        const cd w(-0.5, std::sqrt(3.0) / 2.0);
        std::vector<cd> roots;
        for (int k = 0; k < 3; ++k) {
            const cd wk = std::pow(w, k);
            roots.push_back(wk * u + std::conj(wk) * v - b / 3.0);
        }
        return roots;
    }
    throw consistency_error("monic_roots: unsupported degree");
}

} // namespace detail

/// Allowed T3-eigenvalue shifts per coordinate, derived from a commutator
/// coefficient matrix M with [G, x_j] = i hbar sum_k M(k, j) x_k. A matrix
/// element <n'|x_j|n> forces Delta n to be an eigenvalue of i M^T reachable
/// from e_j; non-real eigenvalues mean the channel is forbidden.
inline std::vector<std::set<double>> allowed_shifts(const Matrix3& m) {
    const Matrix3 mt = m.transpose();
    std::vector<std::set<double>> out(3);
    for (int j = 0; j < 3; ++j) {
        const auto poly = detail::cyclic_minimal_polynomial(mt, j);
        for (const auto& root : detail::monic_roots(poly)) {
            const std::complex<double> shift = std::complex<double>(0.0, 1.0) * root;
            if (std::abs(shift.imag()) < 1e-9)
                out[static_cast<std::size_t>(j)].insert(
                    std::abs(shift.real()) < 1e-9 ? 0.0 : shift.real());
        }
    }
    return out;
}

/// Vibrational selection rules from the [T3, coordinate] commutators:
/// z -> {0}, x -> {-1, +1}, y -> {-1, +1}.
inline std::map<std::string, std::set<int>> selection_rules() {
    const auto table = coordinate_commutators();
    const auto shifts = allowed_shifts(table.coefficient_matrix(3));
    const std::array<std::string, 3> names{"x", "y", "z"};
    std::map<std::string, std::set<int>> rules;
    for (std::size_t j = 0; j < 3; ++j) {
        std::set<int> s;
        for (double v : shifts[j]) {
            const double rounded = std::round(v);
            if (std::abs(v - rounded) > 1e-9)
                throw consistency_error("selection_rules: non-integer shift " +
                                        std::to_string(v));
            s.insert(static_cast<int>(rounded));
        }
        rules[names[j]] = std::move(s);
    }
    return rules;
}

} // namespace kratzer::adjoint

#pragma once

#include <cmath>
#include <string>

#include "kratzer/constants.hpp"
#include "kratzer/errors.hpp"

namespace kratzer::so21 {

enum class LadderDirection { up, down };

struct LadderCoefficient {
    int n_from;
    LadderDirection direction;
    double value;
};

/// Eigenvalue bookkeeping for one l-sector: the lowest T3 eigenvalue q0,
/// the Casimir eigenvalue Q = q0 (q0 - hbar), and the strength tau behind
/// them.
struct AlgebraEigenvalues {
    double q0;
    double Q;
    int l;
    double tau;
};

/// Lowest T3 eigenvalue for strength tau:
///   q0 = hbar/2 + hbar sqrt(tau/hbar^2 + 1/4).
/// Only the upper branch is physical; tau = 0 gives exactly hbar.
inline double q_ground(double tau, double hbar = units::hbar) {
    if (tau < 0.0)
        throw domain_error("q_ground: tau must be nonnegative, got " + std::to_string(tau));
    return 0.5 * hbar + hbar * std::sqrt(tau / (hbar * hbar) + 0.25);
}

/// q_n = q0 + n hbar.
inline double q_n(double q0, int n, double hbar = units::hbar) {
    if (n < 0)
        throw domain_error("q_n: n must be nonnegative");
    return q0 + static_cast<double>(n) * hbar;
}

/// Casimir eigenvalue Q = q0 (q0 - hbar). Equals tau for q0 = q_ground(tau).
inline double casimir_eigenvalue(double q0, double hbar = units::hbar) {
    return q0 * (q0 - hbar);
}

/// Norm of T± applied to |Q, q_n>:  c± = sqrt(-Q + q_n (q_n ± hbar)).
/// The radicand is nonnegative for every valid (q0, n); a radicand below
/// -1e-12 signals an internal inconsistency, tiny negatives clamp to zero.
inline LadderCoefficient ladder_coefficient(double q0, int n, LadderDirection dir,
                                            double hbar = units::hbar) {
    if (n < 0)
        throw domain_error("ladder_coefficient: n must be nonnegative");
    const double qn = q_n(q0, n, hbar);
    const double sign = dir == LadderDirection::up ? 1.0 : -1.0;
    double radicand = -casimir_eigenvalue(q0, hbar) + qn * (qn + sign * hbar);
    if (radicand < -1e-12)
        throw consistency_error("ladder_coefficient: negative radicand " +
                                std::to_string(radicand));
    if (radicand < 0.0)
        radicand = 0.0;
    return {n, dir, std::sqrt(radicand)};
}

/// Assemble the eigenvalue record of one l-sector from its strength.
inline AlgebraEigenvalues algebra_eigenvalues(double tau, int l, double hbar = units::hbar) {
    if (l < 0)
        throw domain_error("algebra_eigenvalues: l must be nonnegative");
    const double q0 = q_ground(tau, hbar);
    return {q0, casimir_eigenvalue(q0, hbar), l, tau};
}

/// Product of the n successive raising coefficients c+(0) ... c+(n-1),
/// i.e. the normalizer connecting |Q, q0> to |Q, q_n> through T+^n.
inline double chain_prefactor(double q0, int n, double hbar = units::hbar) {
    if (n < 0)
        throw domain_error("chain_prefactor: n must be nonnegative");
    double prod = 1.0;
    for (int k = 0; k < n; ++k)
        prod *= ladder_coefficient(q0, k, LadderDirection::up, hbar).value;
    return prod;
}

} // namespace kratzer::so21

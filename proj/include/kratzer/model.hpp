#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "kratzer/constants.hpp"
#include "kratzer/errors.hpp"
#include "kratzer/numerics.hpp"

namespace kratzer {

/// Algebraic coefficients of the potential alpha/r + beta/r^2 plus the
/// reduced mass. alpha < 0 always; beta = 0 is the Coulomb limit and is
/// reachable only through this constructor, never through derive_kratzer.
struct KratzerParams {
    double alpha; // hartree * bohr
    double beta;  // hartree * bohr^2
    double mu;    // electron masses

    KratzerParams(double alpha_, double beta_, double mu_)
        : alpha(alpha_), beta(beta_), mu(mu_) {
        if (!(alpha < 0.0) || !std::isfinite(alpha))
            throw domain_error("KratzerParams: alpha must be negative, got " +
                               std::to_string(alpha_));
        if (!(beta >= 0.0) || !std::isfinite(beta))
            throw domain_error("KratzerParams: beta must be nonnegative, got " +
                               std::to_string(beta_));
        if (!(mu > 0.0) || !std::isfinite(mu))
            throw domain_error("KratzerParams: mu must be positive, got " + std::to_string(mu_));
    }
};

/// tau = l(l+1) hbar^2 + 2 mu beta, the per-l strength entering q0.
struct EffectiveStrength {
    double tau; // hbar^2 units (action squared)
};

namespace model {

/// U(r) = alpha/r + beta/r^2.
inline double potential(const KratzerParams& p, double r) {
    if (!(r > 0.0))
        throw domain_error("potential: r must be positive");
    return p.alpha / r + p.beta / (r * r);
}

/// U(r) plus the centrifugal term l(l+1) hbar^2 / (2 mu r^2).
inline double effective_potential(const KratzerParams& p, int l, double r) {
    if (l < 0)
        throw domain_error("effective_potential: l must be nonnegative");
    if (!(r > 0.0))
        throw domain_error("effective_potential: r must be positive");
    const double hb = units::hbar;
    const double beta_eff = p.beta + static_cast<double>(l) * (l + 1) * hb * hb / (2.0 * p.mu);
    return p.alpha / r + beta_eff / (r * r);
}

inline EffectiveStrength tau(const KratzerParams& p, int l) {
    if (l < 0)
        throw domain_error("tau: l must be nonnegative");
    const double hb = units::hbar;
    return {static_cast<double>(l) * (l + 1) * hb * hb + 2.0 * p.mu * p.beta};
}

/// A potential together with its first two radial derivatives.
struct TwiceDifferentiable {
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
};

/// Kratzer potential with analytic derivatives.
inline TwiceDifferentiable kratzer_curve(const KratzerParams& p) {
    return {
        [p](double r) { return potential(p, r); },
        [p](double r) { return -p.alpha / (r * r) - 2.0 * p.beta / (r * r * r); },
        [p](double r) { return 2.0 * p.alpha / (r * r * r) + 6.0 * p.beta / (r * r * r * r); },
    };
}

/// Wrap a plain curve with 5-point central-difference derivatives,
/// step h = max(1e-5, 1e-5 r).
inline TwiceDifferentiable with_numeric_derivatives(std::function<double(double)> f) {
    auto d1 = [f](double r) { return numerics::central_d1(f, r, numerics::derivative_step(r)); };
    auto d2 = [f](double r) { return numerics::central_d2(f, r, numerics::derivative_step(r)); };
    return {std::move(f), std::move(d1), std::move(d2)};
}

/// L[U](r) = r^2 U'' + 4 r U' + 2 U, the Euler operator whose kernel is
/// span{1/r, 1/r^2}. Vanishes identically on the Kratzer potential.
inline double virial_residual(const TwiceDifferentiable& U, double r) {
    if (!(r > 0.0))
        throw domain_error("virial_residual: r must be positive");
    const double v = U.value(r);
    const double v1 = U.d1(r);
    const double v2 = U.d2(r);
    const double res = r * r * v2 + 4.0 * r * v1 + 2.0 * v;
    if (!std::isfinite(res))
        throw numeric_error("virial_residual: non-finite derivative at r = " + std::to_string(r));
    return res;
}

/// Particular-plus-homogeneous solution of L[U] = W with U(re) = Ue and
/// U'(re) = 0:
///   U(r) = (1/r)  [2 re Ue + I1] - (1/r^2) [re^2 Ue + I2],
/// I1 = integral of W from re to r, I2 = integral of r' W from re to r.
/// W = 0 reproduces the Kratzer form Ue[2(re/r) - (re/r)^2].
inline double reconstruct_potential(const std::function<double(double)>& W, double Ue, double re,
                                    double r, double quad_tol = 1e-12) {
    if (!(r > 0.0) || !(re > 0.0))
        throw domain_error("reconstruct_potential: r and re must be positive");
    const double i1 = numerics::adaptive_simpson(W, re, r, quad_tol);
    const double i2 =
        numerics::adaptive_simpson([&W](double s) { return s * W(s); }, re, r, quad_tol);
    return (2.0 * re * Ue + i1) / r - (re * re * Ue + i2) / (r * r);
}

} // namespace model
} // namespace kratzer

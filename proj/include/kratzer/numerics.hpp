#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "kratzer/errors.hpp"

namespace kratzer::numerics {

namespace detail {

// force_depth levels subdivide unconditionally so that a peak narrow against
// the interval cannot hide between the first probe points.
template <class F>
double adaptive_simpson_step(const F& f, double a, double b, double fa, double fm, double fb,
                             double whole, double tol, int depth, int force_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (force_depth <= 0 &&
        (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * (1.0 + std::abs(a))))
        return left + right + delta / 15.0;
    if (depth <= 0)
        throw numeric_error("adaptive Simpson did not converge; achieved tolerance " +
                            std::to_string(std::abs(delta) / 15.0));
    return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                                 force_depth - 1) +
           adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                                 force_depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
/// Orientation-aware: a > b integrates with the usual sign flip.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-12, int max_depth = 48,
                        int force_depth = 10) {
    if (a == b)
        return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw numeric_error("adaptive Simpson: non-finite integrand sample");
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return sign *
           detail::adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth, force_depth);
}

/// 5-point central first derivative, step h.
template <class F>
double central_d1(const F& f, double x, double h) {
    return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
}

/// 5-point central second derivative, step h.
template <class F>
double central_d2(const F& f, double x, double h) {
    return (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h)) /
           (12.0 * h * h);
}

/// Step choice for numerical derivatives on the half-line r > 0.
inline double derivative_step(double r) {
    return std::max(1e-5, 1e-5 * r);
}

// --- dense polynomials, coefficients ascending in the variable ---

inline double poly_eval(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * x + c[i];
    return acc;
}

inline std::vector<double> poly_derivative(const std::vector<double>& c) {
    if (c.size() <= 1)
        return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i)
        d[i - 1] = static_cast<double>(i) * c[i];
    return d;
}

/// Strictly positive real roots of a polynomial with simple roots, located by a
/// sign-change scan over (0, x_max] followed by bisection refinement.
inline std::vector<double> poly_positive_roots(const std::vector<double>& c, double x_max,
                                               int scan_points = 20000) {
    std::vector<double> roots;
    double prev_x = x_max * 1e-12;
    double prev_f = poly_eval(c, prev_x);
    for (int i = 1; i <= scan_points; ++i) {
        const double x = x_max * static_cast<double>(i) / scan_points;
        const double fx = poly_eval(c, x);
        if (prev_f == 0.0) {
            roots.push_back(prev_x);
        } else if (fx != 0.0 && std::signbit(fx) != std::signbit(prev_f)) {
            double lo = prev_x, hi = x, flo = prev_f;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = poly_eval(c, mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(fm) == std::signbit(flo))
                    lo = mid, flo = fm;
                else
                    hi = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

} // namespace kratzer::numerics

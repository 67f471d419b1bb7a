#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "kratzer/constants.hpp"
#include "kratzer/errors.hpp"
#include "kratzer/grid.hpp"
#include "kratzer/numerics.hpp"
#include "kratzer/so21.hpp"
#include "kratzer/spectrum.hpp"

namespace kratzer {

/// Closed-form radial bound state in f-space, f(r) = r Q(r):
///   f(r) = norm_constant * poly(r) * r^exponent_power * exp(-r / scale),
/// with poly of degree n (coefficients ascending in r), exponent_power =
/// q0/hbar and scale = hbar sigma_n.
struct BoundState {
    int n = 0;
    int l = 0;
    double exponent_power = 1.0;
    double scale = 1.0;
    std::vector<double> poly_coeffs{1.0};
    double norm_constant = 1.0;

    double f(double r) const {
        if (r == 0.0)
            return 0.0;
        return norm_constant * numerics::poly_eval(poly_coeffs, r) *
               std::pow(r, exponent_power) * std::exp(-r / scale);
    }

    double Q(double r) const { return f(r) / r; }

    /// Analytic df/dr.
    double f_derivative(double r) const {
        const double p = numerics::poly_eval(poly_coeffs, r);
        const double dp = numerics::poly_eval(numerics::poly_derivative(poly_coeffs), r);
        return norm_constant * std::pow(r, exponent_power - 1.0) * std::exp(-r / scale) *
               (r * dp + exponent_power * p - (r / scale) * p);
    }
};

/// Grid samples of Q_n(r) plus the quadrature norm of the sampled state.
struct SampledWaveFunction {
    RadialGrid grid;
    std::vector<double> values; // Q_n at the grid points
    double norm = 0.0;          // integral of Q^2 r^2 dr over the grid

    void normalize() {
        const double s = 1.0 / std::sqrt(norm);
        for (auto& v : values)
            v *= s;
        norm = 1.0;
    }
};

namespace wfn {

/// Normalization constant of the ground state,
///   A = [ (2 q0/hbar) (hbar sigma / 2)^(2 q0/hbar + 1) Gamma(2 q0/hbar) ]^(-1/2),
/// evaluated in log space. q0/hbar above 85 would overflow the norm
/// integral's Gamma factor in double precision and is rejected.
inline double normalization_constant(double q0, double sigma, double hbar = units::hbar) {
    if (!(q0 >= hbar))
        throw domain_error("normalization_constant: q0 must be at least hbar");
    if (!(sigma > 0.0))
        throw domain_error("normalization_constant: sigma must be positive");
    const double nu = 2.0 * q0 / hbar;
    if (q0 / hbar > 85.0)
        throw range_error("normalization_constant: q0/hbar = " + std::to_string(q0 / hbar) +
                          " exceeds the supported threshold 85");
    const double log_norm2 =
        std::log(nu) + (nu + 1.0) * std::log(hbar * sigma / 2.0) + std::lgamma(nu);
    return std::exp(-0.5 * log_norm2);
}

namespace detail {

// One step of the raising recurrence in the dimensionless variable
// x = r / (hbar sigma):
//   p_{n+1}(x) = [ x p_n'(x) + ((2 q0 + n hbar)/hbar) p_n(x) - 2 x p_n(x) ] / c_n,
// with c_n = sqrt( (2 (n+1) q0 + n (n+1) hbar) / hbar ).
inline std::vector<double> raise_polynomial(const std::vector<double>& p, int n, double q0,
                                            double hbar) {
    const double cn =
        std::sqrt((2.0 * (n + 1) * q0 + static_cast<double>(n) * (n + 1) * hbar) / hbar);
    std::vector<double> next(p.size() + 1, 0.0);
    const double diag = (2.0 * q0 + static_cast<double>(n) * hbar) / hbar;
    for (std::size_t k = 0; k < p.size(); ++k) {
        next[k] += (diag + static_cast<double>(k)) * p[k]; // diag p + x p'
        next[k + 1] += -2.0 * p[k];                        // -2 x p
    }
    for (auto& c : next)
        c /= cn;
    return next;
}

// Norm integral of an unnormalized state with polynomial p (in x), power pw
// and unit scale: integral over x of p(x)^2 x^(2 pw) e^(-2x).
inline double scaled_norm_integral(const std::vector<double>& p, double pw) {
    const double degree = static_cast<double>(p.size() - 1);
    const double x_hi = 2.0 * pw + 4.0 * degree + 60.0;
    auto integrand = [&p, pw](double x) {
        const double v = numerics::poly_eval(p, x);
        return v * v * std::pow(x, 2.0 * pw) * std::exp(-2.0 * x);
    };
    double peak = 0.0;
    for (int i = 1; i <= 256; ++i)
        peak = std::max(peak, integrand(x_hi * i / 256.0));
    return numerics::adaptive_simpson(integrand, 0.0, x_hi, std::max(peak * x_hi, 1.0) * 1e-14);
}

} // namespace detail

/// Ground state for angular momentum l: f0 = A r^(q0/hbar) exp(-r/(hbar sigma0)),
/// the solution of f0' + (1/(hbar sigma0) - q0/(hbar r)) f0 = 0.
inline BoundState ground_state(const KratzerParams& p, int l) {
    const double hb = units::hbar;
    const double q0 = so21::q_ground(model::tau(p, l).tau, hb);
    const double s0 = spectrum::sigma_n(p, 0, l);
    BoundState st;
    st.n = 0;
    st.l = l;
    st.exponent_power = q0 / hb;
    st.scale = hb * s0;
    st.poly_coeffs = {1.0};
    st.norm_constant = normalization_constant(q0, s0, hb);
    return st;
}

/// Excited state n >= 1: polynomial generated by n applications of the
/// raising recurrence, the per-state scale sigma_n substituted into the
/// exponent and polynomial argument, then normalized by quadrature.
inline BoundState excited_state(const KratzerParams& p, int n, int l) {
    if (n < 1)
        throw domain_error("excited_state: n must be at least 1");
    const double hb = units::hbar;
    const double q0 = so21::q_ground(model::tau(p, l).tau, hb);
    const double sn = spectrum::sigma_n(p, n, l);
    const double pw = q0 / hb;

    std::vector<double> poly_x{1.0};
    for (int k = 0; k < n; ++k)
        poly_x = detail::raise_polynomial(poly_x, k, q0, hb);

    const double s = hb * sn;
    BoundState st;
    st.n = n;
    st.l = l;
    st.exponent_power = pw;
    st.scale = s;
    st.poly_coeffs.resize(poly_x.size());
    for (std::size_t k = 0; k < poly_x.size(); ++k)
        st.poly_coeffs[k] = poly_x[k] * std::pow(s, -static_cast<double>(k));
    // integral of f^2 dr = s^(2 pw + 1) * scaled integral in x
    const double norm2 = detail::scaled_norm_integral(poly_x, pw) * std::pow(s, 2.0 * pw + 1.0);
    st.norm_constant = 1.0 / std::sqrt(norm2);
    return st;
}

/// Ground or excited state, whichever n asks for.
inline BoundState build_state(const KratzerParams& p, int n, int l) {
    return n == 0 ? ground_state(p, l) : excited_state(p, n, l);
}

/// Sample Q_n on a grid; the reported norm is the composite-quadrature value
/// of the integral of Q^2 r^2 over the grid.
inline SampledWaveFunction sample(const BoundState& state, const RadialGrid& grid) {
    SampledWaveFunction out{grid, {}, 0.0};
    out.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double q = state.Q(grid[i]);
        if (std::isnan(q))
            throw numeric_error("sample: NaN at r = " + std::to_string(grid[i]));
        out.values[i] = q;
    }
    const auto w = grids::quadrature_weights(grid);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double f = grid[i] * out.values[i];
        acc += w[i] * f * f;
    }
    out.norm = acc;
    return out;
}

/// Overlap integral of Q_a Q_b r^2 dr on a shared grid.
inline double overlap(const SampledWaveFunction& a, const SampledWaveFunction& b) {
    if (!a.grid.same_as(b.grid))
        throw usage_error("overlap: samples live on different grids");
    const auto w = grids::quadrature_weights(a.grid);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double r = a.grid[i];
        acc += w[i] * r * r * a.values[i] * b.values[i];
    }
    return acc;
}

/// Default norm/sampling grid for a state: log-spaced 4000 points covering
/// both the r^(q0/hbar) rise and the exponential tail.
inline RadialGrid default_grid(const BoundState& state, std::size_t points = 4000) {
    return RadialGrid::log_uniform(1e-3 * state.scale, 40.0 * state.scale, points);
}

} // namespace wfn
} // namespace kratzer

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "kratzer/banded.hpp"
#include "kratzer/errors.hpp"

namespace kratzer {

/// Radial sample grid, strictly increasing and positive. Log-uniform grids
/// are uniform in u = ln r; derivative and quadrature rules exploit that.
class RadialGrid {
public:
    enum class Scheme { uniform, log_uniform };

    static RadialGrid uniform(double r_min, double r_max, std::size_t n) {
        validate(r_min, r_max, n);
        RadialGrid g;
        g.scheme_ = Scheme::uniform;
        g.step_ = (r_max - r_min) / static_cast<double>(n - 1);
        g.r_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            g.r_[i] = r_min + g.step_ * static_cast<double>(i);
        g.r_.back() = r_max;
        return g;
    }

    static RadialGrid log_uniform(double r_min, double r_max, std::size_t n) {
        validate(r_min, r_max, n);
        RadialGrid g;
        g.scheme_ = Scheme::log_uniform;
        const double u0 = std::log(r_min);
        const double u1 = std::log(r_max);
        g.step_ = (u1 - u0) / static_cast<double>(n - 1);
        g.r_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            g.r_[i] = std::exp(u0 + g.step_ * static_cast<double>(i));
        g.r_.front() = r_min;
        g.r_.back() = r_max;
        return g;
    }

    const std::vector<double>& points() const { return r_; }
    std::size_t size() const { return r_.size(); }
    double operator[](std::size_t i) const { return r_[i]; }
    Scheme scheme() const { return scheme_; }

    /// Uniform spacing: in r for uniform grids, in u = ln r for log grids.
    double step() const { return step_; }

    bool same_as(const RadialGrid& other) const {
        return scheme_ == other.scheme_ && r_ == other.r_;
    }

private:
    static void validate(double r_min, double r_max, std::size_t n) {
        if (!(r_min > 0.0))
            throw domain_error("RadialGrid: r_min must be positive");
        if (!(r_max > r_min))
            throw domain_error("RadialGrid: r_max must exceed r_min");
        if (n < 64)
            throw domain_error("RadialGrid: need at least 64 points, got " + std::to_string(n));
    }

    std::vector<double> r_;
    Scheme scheme_ = Scheme::uniform;
    double step_ = 0.0;
};

namespace grids {

/// Index range [lo, hi) that drops `frac` of the points at each boundary.
inline std::pair<std::size_t, std::size_t> interior_range(std::size_t n, double frac = 0.05) {
    const auto cut = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n)));
    return {cut, n - cut};
}

namespace detail {

// Fornberg finite-difference weights for derivative `m` at point z over the
// given nodes. Exact for polynomials up to degree nodes.size()-1.
inline std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = static_cast<int>(std::min<std::size_t>(i, m));
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = c[i][m];
    return w;
}

// Derivative matrix on an abstract uniform axis with spacing h: 5-point
// centered stencils in the interior (4th order), 6-point one-sided closures
// at the edges. Stencil nodes are integer offsets times h, so the weights
// carry no cancellation noise from large absolute coordinates.
inline Banded<double> uniform_derivative_matrix(std::size_t n, double h, int order) {
    const std::size_t half = 2;
    const std::size_t closure = 6;
    Banded<double> d(n, closure - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo, count;
        if (i >= half && i + half < n) {
            lo = i - half;
            count = 2 * half + 1;
        } else if (i < half) {
            lo = 0;
            count = closure;
        } else {
            lo = n - closure;
            count = closure;
        }
        std::vector<double> nodes(count);
        for (std::size_t j = 0; j < count; ++j)
            nodes[j] = (static_cast<double>(lo + j) - static_cast<double>(i)) * h;
        const auto w = fd_weights(0.0, nodes, order);
        for (std::size_t j = 0; j < count; ++j)
            d.set(i, lo + j, w[j]);
    }
    return d;
}

} // namespace detail

/// d/dr as a banded matrix on f-samples.
inline Banded<double> d1_matrix(const RadialGrid& g) {
    if (g.scheme() == RadialGrid::Scheme::uniform)
        return detail::uniform_derivative_matrix(g.size(), g.step(), 1);
    // log grid: d/dr = (1/r) d/du on the uniform u axis
    auto d1u = detail::uniform_derivative_matrix(g.size(), g.step(), 1);
    std::vector<double> inv_r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        inv_r[i] = 1.0 / g[i];
    return Banded<double>::diagonal(inv_r) * d1u;
}

/// d^2/dr^2 as a banded matrix on f-samples.
inline Banded<double> d2_matrix(const RadialGrid& g) {
    if (g.scheme() == RadialGrid::Scheme::uniform)
        return detail::uniform_derivative_matrix(g.size(), g.step(), 2);
    // log grid: d^2/dr^2 = (1/r^2) (d^2/du^2 - d/du)
    auto d1u = detail::uniform_derivative_matrix(g.size(), g.step(), 1);
    auto d2u = detail::uniform_derivative_matrix(g.size(), g.step(), 2);
    std::vector<double> inv_r2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        inv_r2[i] = 1.0 / (g[i] * g[i]);
    return Banded<double>::diagonal(inv_r2) * (d2u - d1u);
}

/// Composite quadrature weights for integrals over the grid: Simpson on the
/// uniform axis (with a 3/8 tail when the interval count is odd), with the
/// jacobian r folded in for log grids.
inline std::vector<double> quadrature_weights(const RadialGrid& g) {
    const std::size_t n = g.size();
    const double h = g.step();
    std::vector<double> w(n, 0.0);
    const bool odd_points = (n % 2 == 1);
    const std::size_t simpson_end = odd_points ? n - 1 : n - 4; // last index of Simpson part
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (!odd_points) {
        w[n - 4] += 3.0 * h / 8.0;
        w[n - 3] += 9.0 * h / 8.0;
        w[n - 2] += 9.0 * h / 8.0;
        w[n - 1] += 3.0 * h / 8.0;
    }
    if (g.scheme() == RadialGrid::Scheme::log_uniform)
        for (std::size_t i = 0; i < n; ++i)
            w[i] *= g[i];
    return w;
}

/// Integral of the sampled function over the grid.
inline double integrate(const RadialGrid& g, const std::vector<double>& f) {
    if (f.size() != g.size())
        throw usage_error("integrate: sample size does not match grid");
    const auto w = quadrature_weights(g);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        acc += w[i] * f[i];
    return acc;
}

} // namespace grids
} // namespace kratzer

#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "kratzer/banded.hpp"
#include "kratzer/constants.hpp"
#include "kratzer/errors.hpp"
#include "kratzer/grid.hpp"

namespace kratzer {

using complex = std::complex<double>;

/// A linear operator on radial-grid samples of f(r) = r Q(r). In f-space the
/// radial momentum acts exactly as -i hbar d/dr.
///
/// Besides the flattened banded matrix, the operator keeps its structural
/// form as a sum of diagonal-times-stencil terms. Applies go through that
/// form when present: the stencil weights repeat row to row, so their
/// rounding perturbs the operator smoothly instead of injecting row-random
/// noise of order r/h^2 that a following second derivative would amplify.
struct GridOperator {
    struct Term {
        std::vector<complex> diag;                      // pointwise factor
        std::shared_ptr<const Banded<double>> stencil;  // nullptr = identity
    };

    Banded<complex> mat;
    RadialGrid grid;
    std::string label;
    std::vector<Term> terms;

    std::vector<complex> apply(const std::vector<complex>& f) const {
        if (terms.empty())
            return mat.apply(f);
        if (f.size() != grid.size())
            throw usage_error("GridOperator::apply size mismatch");
        std::vector<complex> out(f.size(), complex{});
        std::vector<complex> staged;
        for (const auto& term : terms) {
            const std::vector<complex>* src = &f;
            if (term.stencil) {
                staged = apply_stencil(*term.stencil, f);
                src = &staged;
            }
            for (std::size_t i = 0; i < f.size(); ++i)
                out[i] += term.diag[i] * (*src)[i];
        }
        return out;
    }

    std::vector<complex> apply_real(const std::vector<double>& f) const {
        std::vector<complex> z(f.begin(), f.end());
        return apply(z);
    }

private:
    static std::vector<complex> apply_stencil(const Banded<double>& s,
                                              const std::vector<complex>& x) {
        std::vector<complex> y(x.size());
        const std::size_t n = x.size(), k = s.bandwidth();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t jlo = i >= k ? i - k : 0;
            const std::size_t jhi = std::min(n - 1, i + k);
            std::complex<long double> acc{};
            for (std::size_t j = jlo; j <= jhi; ++j)
                acc += static_cast<long double>(s.at(i, j)) * std::complex<long double>(x[j]);
            y[i] = static_cast<complex>(acc);
        }
        return y;
    }
};

/// Smooth test functions sampled on a grid, each vanishing at both grid
/// boundaries (below 1e-12 of its own max).
struct TestFunctionSet {
    RadialGrid grid;
    std::vector<std::vector<double>> members;
};

namespace gridop {

struct Observables {
    GridOperator R;
    GridOperator P;
};

struct Generators {
    GridOperator T1;
    GridOperator T2;
    GridOperator T3;
    GridOperator Tplus;
    GridOperator Tminus;
    GridOperator casimir;
};

/// Which ladder ordering the Casimir form uses: -T+ T- + (T3 - hbar) T3
/// or -T- T+ + (T3 + hbar) T3.
enum class LadderRoute { plus_minus, minus_plus };

namespace detail {

inline std::vector<complex> constant_diag(std::size_t n, complex v) {
    return std::vector<complex>(n, v);
}

} // namespace detail

/// R = r/sigma (diagonal) and P = sigma p_r = -i hbar sigma d/dr.
inline Observables build_observables(const RadialGrid& g, double sigma,
                                     double hbar = units::hbar) {
    if (!(sigma > 0.0))
        throw domain_error("build_observables: sigma must be positive");
    const auto d1 = std::make_shared<Banded<double>>(grids::d1_matrix(g));
    std::vector<complex> r_over_sigma(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        r_over_sigma[i] = g[i] / sigma;
    GridOperator R{Banded<complex>::diagonal(r_over_sigma), g, "R", {}};
    R.terms = {{r_over_sigma, nullptr}};
    GridOperator P{to_complex(*d1, complex(0.0, -hbar * sigma)), g, "P", {}};
    P.terms = {{detail::constant_diag(g.size(), complex(0.0, -hbar * sigma)), d1}};
    return {std::move(R), std::move(P)};
}

/// Generators at a = 1:
///   T3 = (R P^2 + tau R^-1 + R)/2,  T1 = T3 - R,  T2 = R P,
///   T± = T1 ± i T2,  T^2 = -T1^2 - T2^2 + T3^2.
inline Generators build_generators(const RadialGrid& g, double sigma, double tau,
                                   double hbar = units::hbar) {
    if (tau < 0.0)
        throw domain_error("build_generators: tau must be nonnegative");
    if (!(sigma > 0.0))
        throw domain_error("build_generators: sigma must be positive");
    const std::size_t n = g.size();
    const auto d1 = std::make_shared<Banded<double>>(grids::d1_matrix(g));
    const auto d2 = std::make_shared<Banded<double>>(grids::d2_matrix(g));

    // diagonal profiles entering the generators
    std::vector<complex> rp2_scale(n), zero3(n), zero1(n), r_over_sigma(n), hr(n), ihr(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = g[i];
        rp2_scale[i] = -0.5 * hbar * hbar * sigma * r;
        zero3[i] = 0.5 * (tau * sigma / r + r / sigma);
        zero1[i] = 0.5 * (tau * sigma / r - r / sigma);
        r_over_sigma[i] = r / sigma;
        hr[i] = hbar * r;          // i T2 = hbar r d/dr
        ihr[i] = complex(0.0, -hbar * r); // T2 = -i hbar r d/dr
    }

    const auto R = Banded<complex>::diagonal(r_over_sigma);
    const auto RP2 = Banded<complex>::diagonal(rp2_scale) * to_complex(*d2);
    const auto T3m = RP2 + Banded<complex>::diagonal(zero3);
    const auto T1m = T3m - R;
    const auto T2m = Banded<complex>::diagonal(ihr) * to_complex(*d1);
    const auto Tpm = T1m + T2m * complex(0.0, 1.0);
    const auto Tmm = T1m - T2m * complex(0.0, 1.0);
    // The squares carry entries of order (r/h^2)^2 that cancel analytically
    // in the combination (T^2 = tau identically in this representation), so
    // the products are accumulated in extended precision before the sum.
    using lcomplex = std::complex<long double>;
    const auto T1l = banded_cast<lcomplex>(T1m);
    const auto T2l = banded_cast<lcomplex>(T2m);
    const auto T3l = banded_cast<lcomplex>(T3m);
    const auto Cas = banded_cast<complex>(T3l * T3l - T1l * T1l - T2l * T2l);

    Generators gen{{T1m, g, "T1", {}}, {T2m, g, "T2", {}},  {T3m, g, "T3", {}},
                   {Tpm, g, "T+", {}}, {Tmm, g, "T-", {}},  {Cas, g, "T^2", {}}};
    gen.T3.terms = {{rp2_scale, d2}, {zero3, nullptr}};
    gen.T1.terms = {{rp2_scale, d2}, {zero1, nullptr}};
    gen.T2.terms = {{ihr, d1}};
    gen.Tplus.terms = {{rp2_scale, d2}, {zero1, nullptr}, {hr, d1}};
    std::vector<complex> neg_hr(n);
    for (std::size_t i = 0; i < n; ++i)
        neg_hr[i] = -hr[i];
    gen.Tminus.terms = {{rp2_scale, d2}, {zero1, nullptr}, {neg_hr, d1}};
    return gen;
}

/// Canonical smooth test functions for the operator-algebra checks:
/// decaying r^p e^{-c r} members, an oscillatory member that makes the
/// fourth-order truncation term visible, and a compactly supported bump.
inline TestFunctionSet canonical_test_functions(const RadialGrid& g) {
    TestFunctionSet set{g, {}};
    const double a = g[0];
    const double b = g[g.size() - 1];
    auto add = [&](auto&& fn) {
        std::vector<double> v(g.size());
        double peak = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            v[i] = fn(g[i]);
            peak = std::max(peak, std::abs(v[i]));
        }
        if (!(peak > 0.0) || std::abs(v.front()) > 1e-12 * peak ||
            std::abs(v.back()) > 1e-12 * peak)
            throw consistency_error("test function does not vanish at the grid boundary");
        set.members.push_back(std::move(v));
    };
    add([](double r) { return std::pow(r, 5) * std::exp(-2.0 * r); });
    add([](double r) { return std::pow(r, 6) * std::exp(-2.5 * r); });
    add([](double r) { return std::pow(r, 5) * (1.0 + r) * std::exp(-2.0 * r); });
    add([](double r) { return std::sin(3.0 * r) * std::pow(r, 5) * std::exp(-2.0 * r); });
    add([a, b](double r) {
        const double t = (2.0 * r - (a + b)) / (b - a);
        return std::abs(t) >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - t * t));
    });
    return set;
}

namespace detail {

inline void require_same_grid(const RadialGrid& a, const RadialGrid& b, const char* where) {
    if (!a.same_as(b))
        throw usage_error(std::string(where) + ": operators/samples on different grids");
}

/// Interior L2 norm, outer 5% of points dropped at each boundary.
inline double interior_norm(const std::vector<complex>& v) {
    const auto [lo, hi] = grids::interior_range(v.size());
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
        acc += std::norm(v[i]);
    return std::sqrt(acc);
}

inline std::vector<complex> to_complex_vec(const std::vector<double>& v) {
    return {v.begin(), v.end()};
}

} // namespace detail

/// max over the test set of |(AB - BA - scale E) f| / |f| in the interior norm.
inline double commutator_residual(const GridOperator& A, const GridOperator& B,
                                  const GridOperator& expected, complex scale,
                                  const TestFunctionSet& tests) {
    detail::require_same_grid(A.grid, B.grid, "commutator_residual");
    detail::require_same_grid(A.grid, expected.grid, "commutator_residual");
    detail::require_same_grid(A.grid, tests.grid, "commutator_residual");
    double worst = 0.0;
    for (const auto& fr : tests.members) {
        const auto f = detail::to_complex_vec(fr);
        const auto ab = A.apply(B.apply(f));
        const auto ba = B.apply(A.apply(f));
        const auto ef = expected.apply(f);
        std::vector<complex> res(f.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            res[i] = ab[i] - ba[i] - scale * ef[i];
        worst = std::max(worst, detail::interior_norm(res) / detail::interior_norm(f));
    }
    return worst;
}

/// Two-route Casimir consistency: -T1^2 - T2^2 + T3^2 against the ladder
/// form -T± T∓ + (T3 ∓ hbar) T3, both evaluated by sequential applies.
inline double casimir_route_residual(const Generators& gen, LadderRoute route,
                                     const TestFunctionSet& tests, double hbar = units::hbar) {
    detail::require_same_grid(gen.casimir.grid, tests.grid, "casimir_route_residual");
    const auto& first = route == LadderRoute::plus_minus ? gen.Tplus : gen.Tminus;
    const auto& second = route == LadderRoute::plus_minus ? gen.Tminus : gen.Tplus;
    const double shift = route == LadderRoute::plus_minus ? -hbar : hbar;
    double worst = 0.0;
    for (const auto& fr : tests.members) {
        const auto f = detail::to_complex_vec(fr);
        const auto t3f = gen.T3.apply(f);
        const auto t3t3f = gen.T3.apply(t3f);
        const auto t1t1f = gen.T1.apply(gen.T1.apply(f));
        const auto t2t2f = gen.T2.apply(gen.T2.apply(f));
        const auto ladder = first.apply(second.apply(f));
        std::vector<complex> res(f.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            res[i] = (-t1t1f[i] - t2t2f[i] + t3t3f[i]) -
                     (-ladder[i] + t3t3f[i] + shift * t3f[i]);
        worst = std::max(worst, detail::interior_norm(res) / detail::interior_norm(f));
    }
    return worst;
}

/// |T- f0| / |f0| in the interior norm.
inline double annihilation_residual(const GridOperator& Tminus, const std::vector<double>& f0) {
    if (f0.size() != Tminus.grid.size())
        throw usage_error("annihilation_residual: sample size does not match grid");
    const auto f = detail::to_complex_vec(f0);
    return detail::interior_norm(Tminus.apply(f)) / detail::interior_norm(f);
}

/// |Op f - lambda f| / |f| in the interior norm.
inline double eigen_residual(const GridOperator& op, const std::vector<double>& f,
                             double lambda) {
    if (f.size() != op.grid.size())
        throw usage_error("eigen_residual: sample size does not match grid");
    const auto fc = detail::to_complex_vec(f);
    auto of = op.apply(fc);
    for (std::size_t i = 0; i < of.size(); ++i)
        of[i] -= lambda * fc[i];
    return detail::interior_norm(of) / detail::interior_norm(fc);
}

/// |A f - B f| / |f| maximized over the test set.
inline double operator_difference_residual(const GridOperator& A, const GridOperator& B,
                                           const TestFunctionSet& tests) {
    detail::require_same_grid(A.grid, B.grid, "operator_difference_residual");
    detail::require_same_grid(A.grid, tests.grid, "operator_difference_residual");
    double worst = 0.0;
    for (const auto& fr : tests.members) {
        const auto f = detail::to_complex_vec(fr);
        const auto af = A.apply(f);
        const auto bf = B.apply(f);
        std::vector<complex> res(f.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            res[i] = af[i] - bf[i];
        worst = std::max(worst, detail::interior_norm(res) / detail::interior_norm(f));
    }
    return worst;
}

} // namespace gridop
} // namespace kratzer

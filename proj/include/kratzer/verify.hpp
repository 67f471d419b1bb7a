#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "kratzer/adjoint.hpp"
#include "kratzer/grid_operators.hpp"
#include "kratzer/model.hpp"
#include "kratzer/oracle.hpp"
#include "kratzer/so21.hpp"
#include "kratzer/spectrum.hpp"
#include "kratzer/wavefunction.hpp"

namespace kratzer::verify {

struct CheckResult {
    std::string suite;
    std::string name;
    double residual;
    double tolerance;
    bool pass;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"algebra", "oracle", "virial", "adjoint",
                                                "wavefunction"};
    return names;
}

/// Canonical verification parameters: alpha = -2, beta = 1, mu = 1.
inline KratzerParams canonical_params() {
    return KratzerParams(-2.0, 1.0, 1.0);
}

namespace detail {

inline CheckResult check(std::string suite, std::string name, double residual, double tolerance,
                         std::optional<double> tol_override) {
    const double tol = tol_override.value_or(tolerance);
    return {std::move(suite), std::move(name), residual, tol, residual <= tol};
}

// Fixed-sigma T3 eigenbasis samples f_n = p_n(r/sigma) r^q0 e^{-r/sigma},
// built from the raising recurrence. The generators are Hermitian under the
// invariant inner product <f|g> = integral of f g dr/r, so the chain is
// normalized in that measure; only then does T+ f_n = c+(n) f_{n+1} hold
// with unit-norm states.
inline std::vector<std::vector<double>> common_sigma_states(const RadialGrid& g, double q0,
                                                            double sigma, int n_max) {
    const auto w = grids::quadrature_weights(g);
    std::vector<std::vector<double>> states;
    std::vector<double> poly{1.0};
    for (int n = 0; n <= n_max; ++n) {
        std::vector<double> f(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g[i] / sigma;
            double pv = 0.0;
            for (std::size_t k = poly.size(); k-- > 0;)
                pv = pv * x + poly[k];
            f[i] = pv * std::pow(g[i], q0) * std::exp(-x);
        }
        double n2 = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            n2 += w[i] * f[i] * f[i] / g[i];
        for (auto& v : f)
            v /= std::sqrt(n2);
        states.push_back(std::move(f));
        poly = wfn::detail::raise_polynomial(poly, n, q0, units::hbar);
    }
    return states;
}

inline double commutator_residual_at(std::size_t points, int which) {
    const auto g = RadialGrid::uniform(1e-3, 40.0, points);
    const auto gen = gridop::build_generators(g, 1.0, 2.0);
    const auto tests = gridop::canonical_test_functions(g);
    const complex ih(0.0, units::hbar);
    switch (which) {
    case 0: return gridop::commutator_residual(gen.T1, gen.T2, gen.T3, -ih, tests);
    case 1: return gridop::commutator_residual(gen.T2, gen.T3, gen.T1, ih, tests);
    case 2: return gridop::commutator_residual(gen.T3, gen.T1, gen.T2, ih, tests);
    case 3:
        return gridop::commutator_residual(gen.T3, gen.Tplus, gen.Tplus,
                                           complex(units::hbar, 0.0), tests);
    default:
        return gridop::commutator_residual(gen.Tplus, gen.Tminus, gen.T3,
                                           complex(-2.0 * units::hbar, 0.0), tests);
    }
}

} // namespace detail

/// Operator-algebra closure on the grid: commutator relations, their
/// refinement behavior, the two Casimir routes, eigen-relations with the
/// per-state scale, ground-state annihilation, and the common-sigma ladder
/// action against the closed-form coefficients.
inline std::vector<CheckResult> run_algebra_suite(std::optional<double> tol = {}) {
    std::vector<CheckResult> out;
    const auto p = canonical_params();
    const double hb = units::hbar;
    const auto g = RadialGrid::uniform(1e-3, 40.0, 4000);
    const auto gen = gridop::build_generators(g, 1.0, 2.0);
    const auto tests = gridop::canonical_test_functions(g);

    const std::vector<std::string> names{"commutator_T1_T2", "commutator_T2_T3",
                                         "commutator_T3_T1", "commutator_T3_Tplus",
                                         "commutator_Tplus_Tminus"};
    std::vector<double> coarse(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        coarse[i] = detail::commutator_residual_at(4000, static_cast<int>(i));
        out.push_back(detail::check("algebra", names[i], coarse[i], 1e-5, tol));
    }
    // refinement at twice the resolution must shrink residuals at the
    // scheme's convergence order (conservative factor 12 of the ideal 16);
    // residuals already at the double-precision floor cannot shrink further,
    // so the floor guards the dynamic tolerance
    for (std::size_t i = 0; i < names.size(); ++i) {
        const double fine = detail::commutator_residual_at(8000, static_cast<int>(i));
        out.push_back(detail::check("algebra", names[i] + "_refined", fine,
                                    std::max(coarse[i] / 12.0, 2e-8), tol));
    }

    out.push_back(detail::check(
        "algebra", "casimir_route_minus",
        gridop::casimir_route_residual(gen, gridop::LadderRoute::plus_minus, tests), 1e-5, tol));
    out.push_back(detail::check(
        "algebra", "casimir_route_plus",
        gridop::casimir_route_residual(gen, gridop::LadderRoute::minus_plus, tests), 1e-5, tol));

    const double q0 = so21::q_ground(model::tau(p, 0).tau);
    for (int n = 0; n <= 2; ++n) {
        const double sn = spectrum::sigma_n(p, n, 0);
        const auto gen_n = gridop::build_generators(g, sn, 2.0);
        const auto st = wfn::build_state(p, n, 0);
        std::vector<double> f(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            f[i] = st.f(g[i]);
        out.push_back(detail::check(
            "algebra", "eigen_T3_sigma" + std::to_string(n),
            gridop::eigen_residual(gen_n.T3, f, so21::q_n(q0, n)), 1e-5, tol));
    }

    {
        const auto st = wfn::ground_state(p, 0);
        std::vector<double> f0(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            f0[i] = st.f(g[i]);
        out.push_back(detail::check("algebra", "annihilation_f0",
                                    gridop::annihilation_residual(gen.Tminus, f0), 1e-5, tol));
    }

    const auto chain = detail::common_sigma_states(g, q0, 1.0, 2);
    for (int n = 0; n <= 1; ++n) {
        const double cp = so21::ladder_coefficient(q0, n, so21::LadderDirection::up).value;
        const auto tp = gen.Tplus.apply_real(chain[static_cast<std::size_t>(n)]);
        const auto [lo, hi] = grids::interior_range(g.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            num += std::norm(tp[i] - cp * chain[static_cast<std::size_t>(n) + 1][i]);
            den += chain[static_cast<std::size_t>(n)][i] * chain[static_cast<std::size_t>(n)][i];
        }
        out.push_back(detail::check("algebra", "ladder_common_sigma" + std::to_string(n),
                                    std::sqrt(num / den), 1e-4, tol));
    }
    return out;
}

/// Closed-form energies and states against the finite-difference eigensolver,
/// plus the exact Coulomb reduction of the energy formula. When `extras` is
/// given it receives the full comparison report rows.
inline std::vector<CheckResult> run_oracle_suite(std::optional<double> tol = {},
                                                 nlohmann::json* extras = nullptr) {
    std::vector<CheckResult> out;
    const auto p = canonical_params();
    const auto table = spectrum::spectrum_table(p, 4, 2);
    nlohmann::json rows = nlohmann::json::array();
    for (int l = 0; l <= 2; ++l) {
        const auto solved = oracle::solve_bound_states(p, l, 5);
        const auto report = oracle::compare_spectrum(p, table, solved);
        for (const auto& row : report.rows) {
            const std::string tag = "_n" + std::to_string(row.n) + "_l" + std::to_string(row.l);
            out.push_back(
                detail::check("oracle", "energy" + tag, row.energy_rel_error, 1e-6, tol));
            out.push_back(
                detail::check("oracle", "overlap" + tag, row.overlap_deficit, 1e-6, tol));
            if (extras)
                rows.push_back({{"n", row.n},
                                {"l", row.l},
                                {"energy_closed_form", row.energy_closed},
                                {"energy_oracle", row.energy_oracle},
                                {"energy_rel_error", row.energy_rel_error},
                                {"overlap_deficit", row.overlap_deficit},
                                {"pass", row.pass}});
        }
    }
    if (extras)
        (*extras)["oracle_comparison"] = std::move(rows);
    {
        double worst = 0.0;
        for (const auto& [alpha, mu] : std::vector<std::pair<double, double>>{
                 {-1.0, 1.0}, {-2.0, 0.7}, {-0.3, 42.0}}) {
            const KratzerParams cp(alpha, 0.0, mu);
            for (int n = 0; n <= 10; ++n)
                for (int l = 0; l <= 10; ++l) {
                    const double expected =
                        -mu * alpha * alpha /
                        (2.0 * units::hbar * units::hbar * (n + l + 1) * (n + l + 1));
                    worst = std::max(worst, std::abs(spectrum::energy(cp, n, l) - expected) /
                                                std::abs(expected));
                }
        }
        out.push_back(detail::check("oracle", "coulomb_reduction", worst, 1e-12, tol));
    }
    {
        const KratzerParams hydrogen(-1.0, 0.0, 1.0);
        const auto solved = oracle::solve_bound_states(hydrogen, 0, 2);
        const double e0 = std::abs(solved.energies[0] + 0.5) / 0.5;
        const double e1 = std::abs(solved.energies[1] + 0.125) / 0.125;
        out.push_back(detail::check("oracle", "hydrogen_sanity", std::max(e0, e1), 1e-5, tol));
    }
    return out;
}

/// Virial-operator structure: the Euler operator annihilates the Kratzer
/// potential, hand-differentiated oracles, and the quadrature reconstruction.
inline std::vector<CheckResult> run_virial_suite(std::optional<double> tol = {}) {
    std::vector<CheckResult> out;
    const auto p = canonical_params();
    const auto curve = model::kratzer_curve(p);

    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double r = 1e-2 * std::pow(1e5, i / 199.0);
        const double scale = std::abs(2.0 * curve.value(r)) + std::abs(4.0 * r * curve.d1(r)) +
                             std::abs(r * r * curve.d2(r));
        worst = std::max(worst, std::abs(model::virial_residual(curve, r)) / scale);
    }
    out.push_back(detail::check("virial", "kratzer_annihilation", worst, 1e-12, tol));

    const model::TwiceDifferentiable cubic{[](double r) { return 1.0 / (r * r * r); },
                                           [](double r) { return -3.0 / std::pow(r, 4); },
                                           [](double r) { return 12.0 / std::pow(r, 5); }};
    out.push_back(detail::check("virial", "inverse_cube_oracle",
                                std::abs(model::virial_residual(cubic, 1.0) - 2.0) / 2.0, 1e-12,
                                tol));
    const model::TwiceDifferentiable constant{[](double) { return -1.3; },
                                              [](double) { return 0.0; },
                                              [](double) { return 0.0; }};
    out.push_back(detail::check("virial", "constant_curve",
                                std::abs(model::virial_residual(constant, 2.0) + 2.6) / 2.6,
                                1e-12, tol));

    auto W0 = [](double) { return 0.0; };
    worst = 0.0;
    for (int i = 0; i < 120; ++i) {
        const double r = 1e-2 * std::pow(1e5, i / 119.0);
        const double got = model::reconstruct_potential(W0, -1.0, 1.0, r);
        worst = std::max(worst, std::abs(got - model::potential(p, r)) /
                                    std::abs(model::potential(p, r)));
    }
    out.push_back(detail::check("virial", "reconstruct_kratzer_pointwise", worst, 1e-12, tol));

    const double lin = model::reconstruct_potential([](double r) { return r; }, -1.0, 1.0, 2.0);
    out.push_back(detail::check("virial", "reconstruct_linear_W",
                                std::abs(lin + 7.0 / 12.0) / (7.0 / 12.0), 1e-10, tol));
    return out;
}

/// Exact integer identities of the adjoint representation plus the derived
/// selection rules. When `extras` is given it receives the coordinate
/// commutator table and the derived rules.
inline std::vector<CheckResult> run_adjoint_suite(std::optional<double> tol = {},
                                                  nlohmann::json* extras = nullptr) {
    using adjoint::Matrix3;
    std::vector<CheckResult> out;
    const auto t1 = adjoint::adjoint_generator(1);
    const auto t2 = adjoint::adjoint_generator(2);
    const auto t3 = adjoint::adjoint_generator(3);

    double dev = std::max({(adjoint::commutator(t1, t2) + t3).max_abs(),
                           (adjoint::commutator(t2, t3) - t1).max_abs(),
                           (adjoint::commutator(t3, t1) - t2).max_abs()});
    out.push_back(detail::check("adjoint", "commutator_closure", dev, 0.0, tol));

    const auto eta = adjoint::metric();
    dev = 0.0;
    for (int axis : {1, 2, 3}) {
        const auto t = adjoint::adjoint_generator(axis);
        dev = std::max(dev, (t.transpose() * eta + eta * t).max_abs());
    }
    out.push_back(detail::check("adjoint", "metric_preservation", dev, 0.0, tol));

    const auto table = adjoint::coordinate_commutators();
    dev = 0.0;
    for (int axis : {1, 2, 3}) {
        const auto m = table.coefficient_matrix(axis);
        const auto t = adjoint::adjoint_generator(axis);
        dev = std::max(dev, (m + t.transpose()).max_abs());
    }
    out.push_back(detail::check("adjoint", "coordinate_table_consistency", dev, 0.0, tol));

    const double eps = 0.25;
    dev = 0.0;
    for (int axis : {1, 2, 3}) {
        const auto r = adjoint::finite_transformation(eps, axis);
        const auto expected = Matrix3::identity() + adjoint::adjoint_generator(axis) * eps;
        dev = std::max(dev, (r - expected).max_abs());
    }
    out.push_back(detail::check("adjoint", "finite_transformation_entries", dev, 0.0, tol));

    const double e2 = 1e-3;
    dev = 0.0;
    for (int axis : {1, 2, 3}) {
        const auto t = adjoint::adjoint_generator(axis);
        const auto series = Matrix3::identity() + t * e2 + (t * t) * (e2 * e2 / 2.0);
        dev = std::max(dev, (series - adjoint::finite_transformation(e2, axis)).max_abs());
    }
    out.push_back(detail::check("adjoint", "exponential_series_first_order", dev, e2 * e2, tol));

    const auto rules = adjoint::selection_rules();
    const bool rules_ok = rules.at("z") == std::set<int>{0} &&
                          rules.at("x") == std::set<int>{-1, 1} &&
                          rules.at("y") == std::set<int>{-1, 1};
    out.push_back(detail::check("adjoint", "selection_rules", rules_ok ? 0.0 : 1.0, 0.0, tol));

    if (extras) {
        const std::array<std::string, 3> coords{"x", "y", "z"};
        nlohmann::json brackets;
        for (int gen_axis = 1; gen_axis <= 3; ++gen_axis) {
            nlohmann::json row;
            for (int c = 1; c <= 3; ++c) {
                const int t = table.target_of(gen_axis, c);
                row[coords[static_cast<std::size_t>(c - 1)]] =
                    t == 0 ? "0"
                           : std::string(t > 0 ? "+" : "-") +
                                 coords[static_cast<std::size_t>(std::abs(t) - 1)];
            }
            brackets["T" + std::to_string(gen_axis)] = std::move(row);
        }
        (*extras)["coordinate_commutators"] = std::move(brackets);
        nlohmann::json rj;
        for (const auto& [coord, shifts] : rules)
            rj[coord] = shifts;
        (*extras)["selection_rules"] = std::move(rj);
    }
    return out;
}

/// Wavefunction construction: the first-order ODE, normalization routes,
/// the explicit first-excited form, orthonormality, the Schroedinger residual,
/// and the Laguerre cross-check.
inline std::vector<CheckResult> run_wavefunction_suite(std::optional<double> tol = {}) {
    std::vector<CheckResult> out;
    const auto p = canonical_params();
    const double hb = units::hbar;

    {
        const auto st = wfn::ground_state(p, 0);
        const auto g = wfn::default_grid(st);
        double peak = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            peak = std::max(peak, std::abs(st.f(g[i])));
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double r = g[i];
            const double res =
                st.f_derivative(r) + (1.0 / st.scale - st.exponent_power / r) * st.f(r);
            worst = std::max(worst, std::abs(res));
        }
        out.push_back(detail::check("wavefunction", "ground_state_ode_residual", worst / peak, 1e-8, tol));

        const double q0 = so21::q_ground(model::tau(p, 0).tau);
        const double s0 = spectrum::sigma_n(p, 0, 0);
        const double A = wfn::normalization_constant(q0, s0);
        auto integrand = [&](double r) {
            const double f = std::pow(r, q0 / hb) * std::exp(-r / (hb * s0));
            return f * f;
        };
        const double quad =
            numerics::adaptive_simpson(integrand, 0.0, hb * s0 * (20.0 * q0 + 80.0), 1e-14);
        out.push_back(detail::check("wavefunction", "normalization_vs_quadrature",
                                    std::abs(A * std::sqrt(quad) - 1.0), 1e-10, tol));
    }

    {
        const auto st = wfn::excited_state(p, 1, 0);
        const double q0 = 2.0, s1 = 1.5;
        const double direct0 = 2.0 * std::sqrt(q0 / (2.0 * hb));
        const double direct1 = -(2.0 / s1) * std::sqrt(1.0 / (2.0 * q0 * hb));
        const double got = st.poly_coeffs[1] / st.poly_coeffs[0];
        const double want = direct1 / direct0;
        out.push_back(detail::check("wavefunction", "first_excited_coefficients",
                                    std::abs(got - want) / std::abs(want), 1e-12, tol));
        const auto roots = numerics::poly_positive_roots(st.poly_coeffs, 20.0);
        out.push_back(detail::check("wavefunction", "first_excited_node",
                                    roots.size() == 1 ? std::abs(roots[0] - 3.0) / 3.0 : 1.0,
                                    1e-9, tol));
    }

    {
        const auto g = RadialGrid::log_uniform(1e-4, 130.0, 9000);
        std::vector<SampledWaveFunction> states;
        for (int n = 0; n <= 4; ++n)
            states.push_back(wfn::sample(wfn::build_state(p, n, 0), g));
        double dev = 0.0;
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; b <= 4; ++b) {
                const double want = a == b ? 1.0 : 0.0;
                dev = std::max(dev, std::abs(wfn::overlap(states[static_cast<std::size_t>(a)],
                                                          states[static_cast<std::size_t>(b)]) -
                                             want));
            }
        out.push_back(detail::check("wavefunction", "gram_identity", dev, 1e-6, tol));
        out.push_back(detail::check("wavefunction", "sampled_norm",
                                    std::abs(states[0].norm - 1.0), 1e-6, tol));
    }

    {
        const auto g = RadialGrid::uniform(1e-3, 70.0, 7000);
        const auto d2 = grids::d2_matrix(g);
        const auto [lo, hi] = grids::interior_range(g.size());
        for (int n = 0; n <= 4; ++n) {
            const auto st = wfn::build_state(p, n, 0);
            const double e = spectrum::energy(p, n, 0);
            std::vector<double> f(g.size());
            for (std::size_t i = 0; i < g.size(); ++i)
                f[i] = st.f(g[i]);
            const auto ddf = d2.apply(f);
            double num = 0.0, den = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                const double v = model::effective_potential(p, 0, g[i]);
                const double resid =
                    -hb * hb / (2.0 * p.mu) * ddf[i] + v * f[i] - e * f[i];
                num += resid * resid;
                den += f[i] * f[i];
            }
            out.push_back(detail::check("wavefunction",
                                        "schrodinger_residual_n" + std::to_string(n),
                                        std::sqrt(num / den), 1e-6, tol));
        }
    }

    {
        // Laguerre cross-check via the three-term recurrence in coefficient space
        const double q0 = so21::q_ground(model::tau(p, 0).tau);
        const double a = 2.0 * q0 / hb - 1.0;
        double worst = 0.0;
        for (int n = 1; n <= 6; ++n) {
            const auto st = wfn::build_state(p, n, 0);
            std::vector<double> lm1{1.0}, l0{1.0 + a, -1.0};
            for (int k = 1; k < n; ++k) {
                std::vector<double> next(l0.size() + 1, 0.0);
                for (std::size_t i = 0; i < l0.size(); ++i) {
                    next[i] += (2.0 * k + 1.0 + a) * l0[i];
                    next[i + 1] -= l0[i];
                }
                for (std::size_t i = 0; i < lm1.size(); ++i)
                    next[i] -= (k + a) * lm1[i];
                for (auto& c : next)
                    c /= (k + 1.0);
                lm1 = std::move(l0);
                l0 = std::move(next);
            }
            for (std::size_t k = 1; k < l0.size(); ++k) {
                const double mine = st.poly_coeffs[k] / st.poly_coeffs[0];
                const double ref = l0[k] * std::pow(2.0 / st.scale, k) / l0[0];
                worst = std::max(worst, std::abs(mine - ref) / std::abs(ref));
            }
        }
        out.push_back(detail::check("wavefunction", "laguerre_coefficients", worst, 1e-10, tol));
    }
    return out;
}

inline std::vector<CheckResult> run_suite(const std::string& name,
                                          std::optional<double> tol = {},
                                          nlohmann::json* extras = nullptr) {
    if (name == "algebra")
        return run_algebra_suite(tol);
    if (name == "oracle")
        return run_oracle_suite(tol, extras);
    if (name == "virial")
        return run_virial_suite(tol);
    if (name == "adjoint")
        return run_adjoint_suite(tol, extras);
    if (name == "wavefunction")
        return run_wavefunction_suite(tol);
    if (name == "all") {
        std::vector<CheckResult> out;
        for (const auto& suite : suite_names()) {
            auto part = run_suite(suite, tol, extras);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw usage_error("unknown verification suite `" + name + "`");
}

inline bool all_pass(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

inline nlohmann::json report_json(const std::vector<CheckResult>& checks) {
    nlohmann::json report;
    report["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        report["checks"].push_back({{"suite", c.suite},
                                    {"name", c.name},
                                    {"residual", c.residual},
                                    {"tolerance", c.tolerance},
                                    {"pass", c.pass}});
    report["total"] = checks.size();
    report["all_pass"] = all_pass(checks);
    return report;
}

} // namespace kratzer::verify

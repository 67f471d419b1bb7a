#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <lapacke.h>

#include "kratzer/constants.hpp"
#include "kratzer/errors.hpp"
#include "kratzer/grid.hpp"
#include "kratzer/model.hpp"
#include "kratzer/spectrum.hpp"
#include "kratzer/wavefunction.hpp"

namespace kratzer {

/// Output of the finite-difference radial eigensolver: Richardson-extrapolated
/// energies and normalized f-samples on the fine solve grid.
struct OracleResult {
    int l = 0;
    std::vector<double> energies;
    std::vector<std::vector<double>> states;
    RadialGrid grid{RadialGrid::uniform(1.0, 2.0, 64)};
    std::vector<double> estimated_error;
};

namespace oracle {

/// Solve box; unset bounds fall back to the defaults
/// r_min = 1e-4 * (2 beta_eff / -alpha), r_max = 60 * hbar * sigma_{count-1}.
struct GridSpec {
    std::optional<double> r_min;
    std::optional<double> r_max;
    std::size_t points = 20000; // interior nodes of the coarse solve
};

namespace detail {

// Lowest `count` eigenpairs of the Dirichlet discretization of
//   -(hbar^2 / 2 mu) f'' + V_eff(r) f = E f
// on `n` interior nodes spaced h inside [r_lo, r_hi].
struct TridiagSolve {
    std::vector<double> energies;
    std::vector<std::vector<double>> vectors; // unit 2-norm columns
    double h;
    double r_first; // first interior node
};

inline TridiagSolve solve_tridiag(const KratzerParams& p, double beta_eff, double r_lo,
                                  double r_hi, std::size_t n, int count, bool want_vectors) {
    const double hb = units::hbar;
    const double h = (r_hi - r_lo) / static_cast<double>(n + 1);
    const double kinetic = hb * hb / (p.mu * h * h);
    std::vector<double> diag(n), off(n > 1 ? n - 1 : 0, -0.5 * kinetic);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = r_lo + h * static_cast<double>(i + 1);
        diag[i] = kinetic + p.alpha / r + beta_eff / (r * r);
    }

    const auto ln = static_cast<lapack_int>(n);
    lapack_int m = 0;
    std::vector<double> w(n);
    std::vector<double> z(want_vectors ? n * static_cast<std::size_t>(count) : 1);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(std::max(1, count)));
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', ln, diag.data(), off.data(), 0.0, 0.0,
        1, static_cast<lapack_int>(count), 0.0, &m, w.data(), z.data(), ln, isuppz.data());
    if (info != 0)
        throw numeric_error("oracle: LAPACK dstevr failed with info = " + std::to_string(info));
    if (m < count)
        throw numeric_error("oracle: eigensolver returned fewer pairs than requested");

    TridiagSolve out;
    out.h = h;
    out.r_first = r_lo + h;
    out.energies.assign(w.begin(), w.begin() + count);
    if (want_vectors) {
        out.vectors.resize(count);
        for (int k = 0; k < count; ++k)
            out.vectors[k].assign(z.begin() + static_cast<std::ptrdiff_t>(k) * ln,
                                  z.begin() + static_cast<std::ptrdiff_t>(k + 1) * ln);
    }
    return out;
}

} // namespace detail

/// Number of interior sign changes of a sampled state, ignoring samples below
/// 1e-8 of the maximum magnitude.
inline int node_count(const std::vector<double>& f) {
    double peak = 0.0;
    for (double v : f)
        peak = std::max(peak, std::abs(v));
    int nodes = 0;
    int prev_sign = 0;
    for (double v : f) {
        if (std::abs(v) <= 1e-8 * peak)
            continue;
        const int s = v > 0.0 ? 1 : -1;
        if (prev_sign != 0 && s != prev_sign)
            ++nodes;
        prev_sign = s;
    }
    return nodes;
}

/// Lowest `count` bound states for angular momentum l by symmetric
/// tridiagonal diagonalization at two resolutions (points and 2*points+1)
/// with Richardson extrapolation of the energies.
inline OracleResult solve_bound_states(const KratzerParams& p, int l, int count,
                                       const GridSpec& spec = {}) {
    if (count < 1)
        throw domain_error("solve_bound_states: count must be at least 1");
    if (l < 0)
        throw domain_error("solve_bound_states: l must be nonnegative");
    const double hb = units::hbar;
    const double beta_eff =
        p.beta + static_cast<double>(l) * (l + 1) * hb * hb / (2.0 * p.mu);
    // beta_eff = 0 gives r_lo = 0, the exact s-wave Coulomb boundary
    const double re_eff = 2.0 * beta_eff / (-p.alpha);
    const double r_lo = spec.r_min.value_or(1e-4 * re_eff);
    const double r_hi = spec.r_max.value_or(60.0 * hb * spectrum::sigma_n(p, count - 1, l));
    if (!(r_hi > r_lo))
        throw domain_error("solve_bound_states: empty box");

    const std::size_t n_coarse = spec.points;
    const std::size_t n_fine = 2 * n_coarse + 1;
    const auto coarse = detail::solve_tridiag(p, beta_eff, r_lo, r_hi, n_coarse, count, false);
    auto fine = detail::solve_tridiag(p, beta_eff, r_lo, r_hi, n_fine, count, true);

    OracleResult out;
    out.l = l;
    out.grid = RadialGrid::uniform(fine.r_first, r_lo + fine.h * static_cast<double>(n_fine),
                                   n_fine);
    const auto weights = grids::quadrature_weights(out.grid);
    for (int k = 0; k < count; ++k) {
        const double extrapolated = (4.0 * fine.energies[k] - coarse.energies[k]) / 3.0;
        if (!(extrapolated < 0.0))
            throw box_error("solve_bound_states: state " + std::to_string(k) +
                            " is not bound in the box; enlarge r_max beyond " +
                            std::to_string(r_hi));
        out.energies.push_back(extrapolated);
        out.estimated_error.push_back(std::abs(extrapolated - fine.energies[k]));

        auto& v = fine.vectors[k];
        // orient: positive where the state first becomes substantial
        double peak = 0.0;
        for (double x : v)
            peak = std::max(peak, std::abs(x));
        for (double x : v) {
            if (std::abs(x) > 0.01 * peak) {
                if (x < 0.0)
                    for (auto& y : v)
                        y = -y;
                break;
            }
        }
        double norm2 = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            norm2 += weights[i] * v[i] * v[i];
        const double s = 1.0 / std::sqrt(norm2);
        for (auto& y : v)
            y *= s;
        out.states.push_back(std::move(v));
    }
    return out;
}

/// One row of the closed-form vs oracle comparison.
struct ComparisonRow {
    int n;
    int l;
    double energy_closed;
    double energy_oracle;
    double energy_rel_error;
    double overlap_deficit; // 1 - |<closed|oracle>|
    bool pass;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    double tol_energy;
    double tol_overlap;
    bool all_pass = true;
};

/// Per-(n, l) relative energy error and overlap deficit of the closed-form
/// table against oracle eigenpairs of the same l.
inline ComparisonReport compare_spectrum(const KratzerParams& p,
                                         const std::vector<SpectrumEntry>& table,
                                         const OracleResult& oracle, double tol_energy = 1e-6,
                                         double tol_overlap = 1e-6) {
    ComparisonReport report;
    report.tol_energy = tol_energy;
    report.tol_overlap = tol_overlap;
    const auto weights = grids::quadrature_weights(oracle.grid);
    for (const auto& entry : table) {
        if (entry.l != oracle.l)
            continue;
        if (entry.n >= static_cast<int>(oracle.energies.size()))
            throw usage_error("compare_spectrum: oracle has no state n = " +
                              std::to_string(entry.n));
        const double e_or = oracle.energies[static_cast<std::size_t>(entry.n)];
        const double rel = std::abs(entry.energy - e_or) / std::abs(e_or);

        const auto state = wfn::build_state(p, entry.n, entry.l);
        const auto& ov = oracle.states[static_cast<std::size_t>(entry.n)];
        double dot = 0.0, norm_alg = 0.0;
        for (std::size_t i = 0; i < ov.size(); ++i) {
            const double fa = state.f(oracle.grid[i]);
            dot += weights[i] * fa * ov[i];
            norm_alg += weights[i] * fa * fa;
        }
        const double deficit = 1.0 - std::abs(dot) / std::sqrt(norm_alg);

        ComparisonRow row{entry.n,       entry.l, entry.energy, e_or, rel, deficit,
                          rel <= tol_energy && deficit <= tol_overlap};
        report.all_pass = report.all_pass && row.pass;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace oracle
} // namespace kratzer

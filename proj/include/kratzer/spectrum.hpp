#pragma once

#include <cmath>
#include <vector>

#include "kratzer/constants.hpp"
#include "kratzer/errors.hpp"
#include "kratzer/model.hpp"
#include "kratzer/so21.hpp"

namespace kratzer {

/// One bound state of the spectrum table.
struct SpectrumEntry {
    int n;
    int l;
    double q0;      // lowest T3 eigenvalue for this l
    double qn;      // q0 + n hbar
    double sigma_n; // canonical scale of state (n, l)
    double energy;  // hartree, negative
};

namespace spectrum {

/// sigma_n = -(hbar / mu alpha) { n + 1/2 + sqrt((l+1/2)^2 + 2 mu beta / hbar^2) }.
/// Equivalently q_n / (-mu alpha); successive sigmas differ by -hbar/(mu alpha).
inline double sigma_n(const KratzerParams& p, int n, int l) {
    if (n < 0 || l < 0)
        throw domain_error("sigma_n: n and l must be nonnegative");
    if (!(p.alpha < 0.0))
        throw domain_error("sigma_n: alpha must be negative (no bound states otherwise)");
    const double hb = units::hbar;
    const double q0 = so21::q_ground(model::tau(p, l).tau, hb);
    return so21::q_n(q0, n, hb) / (-p.mu * p.alpha);
}

/// Bound-state energy, computed through the canonical scale:
/// eps = -1 / (2 mu sigma_n^2). Algebraically identical to the expanded
/// spectroscopic-constant form; the identity is pinned by tests.
inline double energy(const KratzerParams& p, int n, int l) {
    const double s = sigma_n(p, n, l);
    return -1.0 / (2.0 * p.mu * s * s);
}

/// All entries with n <= n_max and l <= l_max, sorted by (l, n).
inline std::vector<SpectrumEntry> spectrum_table(const KratzerParams& p, int n_max, int l_max) {
    if (n_max < 0 || l_max < 0)
        throw domain_error("spectrum_table: n_max and l_max must be nonnegative");
    const double hb = units::hbar;
    std::vector<SpectrumEntry> out;
    out.reserve(static_cast<std::size_t>(n_max + 1) * (l_max + 1));
    for (int l = 0; l <= l_max; ++l) {
        const double q0 = so21::q_ground(model::tau(p, l).tau, hb);
        for (int n = 0; n <= n_max; ++n) {
            const double s = sigma_n(p, n, l);
            out.push_back({n, l, q0, so21::q_n(q0, n, hb), s, energy(p, n, l)});
        }
    }
    return out;
}

} // namespace spectrum
} // namespace kratzer

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "kratzer/errors.hpp"

namespace kratzer {

namespace detail {

// Accumulation type for apply/multiply: the derivative-matrix entries grow
// like 1/h^2, so plain double accumulation leaves a roundoff floor that
// swamps the scheme's truncation error in operator compositions.
template <class T>
struct widen {
    using type = long double;
};
template <class U>
struct widen<std::complex<U>> {
    using type = std::complex<long double>;
};
template <class T>
using widen_t = typename widen<T>::type;

} // namespace detail

/// Square banded matrix with equal lower and upper half-bandwidth k.
/// Row-major band storage: entry (i, j) lives at row i, slot j - i + k.
template <class T>
class Banded {
public:
    Banded() = default;

    Banded(std::size_t n, std::size_t k) : n_(n), k_(k), a_(n * (2 * k + 1), T{}) {}

    static Banded identity(std::size_t n) {
        Banded m(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            m.set(i, i, T{1});
        return m;
    }

    static Banded diagonal(const std::vector<T>& d) {
        Banded m(d.size(), 0);
        for (std::size_t i = 0; i < d.size(); ++i)
            m.set(i, i, d[i]);
        return m;
    }

    std::size_t size() const { return n_; }
    std::size_t bandwidth() const { return k_; }

    /// Entry (i, j); zero outside the band.
    T at(std::size_t i, std::size_t j) const {
        const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
        if (off < -static_cast<std::ptrdiff_t>(k_) || off > static_cast<std::ptrdiff_t>(k_))
            return T{};
        return a_[i * (2 * k_ + 1) + static_cast<std::size_t>(off + static_cast<std::ptrdiff_t>(k_))];
    }

    void set(std::size_t i, std::size_t j, T v) {
        const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
        if (off < -static_cast<std::ptrdiff_t>(k_) || off > static_cast<std::ptrdiff_t>(k_))
            throw usage_error("Banded::set outside band");
        a_[i * (2 * k_ + 1) + static_cast<std::size_t>(off + static_cast<std::ptrdiff_t>(k_))] = v;
    }

    void add_to(std::size_t i, std::size_t j, T v) { set(i, j, at(i, j) + v); }

    std::vector<T> apply(const std::vector<T>& x) const {
        if (x.size() != n_)
            throw usage_error("Banded::apply size mismatch");
        std::vector<T> y(n_, T{});
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t jlo = i >= k_ ? i - k_ : 0;
            const std::size_t jhi = std::min(n_ - 1, i + k_);
            detail::widen_t<T> acc{};
            for (std::size_t j = jlo; j <= jhi; ++j)
                acc += detail::widen_t<T>(at(i, j)) * detail::widen_t<T>(x[j]);
            y[i] = static_cast<T>(acc);
        }
        return y;
    }

    Banded operator*(const Banded& rhs) const {
        if (rhs.n_ != n_)
            throw usage_error("Banded::operator* size mismatch");
        Banded c(n_, std::min(n_ - 1, k_ + rhs.k_));
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t jlo = i >= c.k_ ? i - c.k_ : 0;
            const std::size_t jhi = std::min(n_ - 1, i + c.k_);
            for (std::size_t j = jlo; j <= jhi; ++j) {
                const std::size_t mlo = std::max(i >= k_ ? i - k_ : 0, j >= rhs.k_ ? j - rhs.k_ : 0);
                const std::size_t mhi = std::min(std::min(n_ - 1, i + k_), j + rhs.k_);
                detail::widen_t<T> acc{};
                for (std::size_t m = mlo; m <= mhi; ++m)
                    acc += detail::widen_t<T>(at(i, m)) * detail::widen_t<T>(rhs.at(m, j));
                c.set(i, j, static_cast<T>(acc));
            }
        }
        return c;
    }

    Banded operator+(const Banded& rhs) const { return combined(rhs, T{1}); }
    Banded operator-(const Banded& rhs) const { return combined(rhs, T{-1}); }

    Banded operator*(T s) const {
        Banded c = *this;
        for (auto& v : c.a_)
            v *= s;
        return c;
    }

    Banded operator-() const { return *this * T{-1}; }

    /// Largest absolute entry-wise difference; bands need not match.
    double max_abs_diff(const Banded& rhs) const {
        if (rhs.n_ != n_)
            throw usage_error("Banded::max_abs_diff size mismatch");
        const std::size_t k = std::max(k_, rhs.k_);
        double worst = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t jlo = i >= k ? i - k : 0;
            const std::size_t jhi = std::min(n_ - 1, i + k);
            for (std::size_t j = jlo; j <= jhi; ++j)
                worst = std::max(worst, std::abs(at(i, j) - rhs.at(i, j)));
        }
        return worst;
    }

    bool all_finite() const {
        for (const auto& v : a_)
            if (!std::isfinite(std::abs(v)))
                return false;
        return true;
    }

private:
    Banded combined(const Banded& rhs, T sign) const {
        if (rhs.n_ != n_)
            throw usage_error("Banded combine size mismatch");
        Banded c(n_, std::max(k_, rhs.k_));
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t jlo = i >= c.k_ ? i - c.k_ : 0;
            const std::size_t jhi = std::min(n_ - 1, i + c.k_);
            for (std::size_t j = jlo; j <= jhi; ++j)
                c.set(i, j, at(i, j) + sign * rhs.at(i, j));
        }
        return c;
    }

    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<T> a_;
};

/// Promote a real banded matrix to a complex one.
inline Banded<std::complex<double>> to_complex(const Banded<double>& m,
                                               std::complex<double> scale = {1.0, 0.0}) {
    Banded<std::complex<double>> c(m.size(), m.bandwidth());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const std::size_t jlo = i >= m.bandwidth() ? i - m.bandwidth() : 0;
        const std::size_t jhi = std::min(m.size() - 1, i + m.bandwidth());
        for (std::size_t j = jlo; j <= jhi; ++j)
            c.set(i, j, scale * m.at(i, j));
    }
    return c;
}

/// Entry-wise scalar conversion between banded matrices.
template <class To, class From>
Banded<To> banded_cast(const Banded<From>& m) {
    Banded<To> c(m.size(), m.bandwidth());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const std::size_t jlo = i >= m.bandwidth() ? i - m.bandwidth() : 0;
        const std::size_t jhi = std::min(m.size() - 1, i + m.bandwidth());
        for (std::size_t j = jlo; j <= jhi; ++j)
            c.set(i, j, static_cast<To>(m.at(i, j)));
    }
    return c;
}

} // namespace kratzer

#pragma once

// Trigonometric interpolation machinery for real periodic samples on the
// uniform grid u_j = 2*pi*j/N. Differentiation multiplies by (i p) in
// frequency space; modes below a relative rounding floor are zeroed first
// ("chopped", as in Chebfun's coefficient truncation) so that repeated
// differentiation does not amplify noise that carries no information. A
// sixth arc-length derivative amplifies mode p by p^6; without the chop an
// exact circle at N = 256 produces O(1e-4) garbage in the Euler-Lagrange
// operator, with it the operator vanishes identically.
//
// The radix-2 path covers the recommended power-of-two sample counts; other
// sizes fall back to a naive O(N^2) transform, which at N <= 512 is still
// far from being a bottleneck.

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include "icf/detail/real.hpp"

namespace icf::spectral {

template <class Real>
using cvec = std::vector<std::complex<Real>>;

namespace detail {

template <class Real>
const cvec<Real>& twiddles(std::size_t n) {
    thread_local std::map<std::size_t, cvec<Real>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    using T = icf::detail::RealTraits<Real>;
    cvec<Real> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        Real ang = Real(-2) * T::pi() * Real(j) / Real(n);
        w[j] = {T::cos(ang), T::sin(ang)};
    }
    return cache.emplace(n, std::move(w)).first->second;
}

template <class Real>
void fft_pow2(cvec<Real>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto& w = twiddles<Real>(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                auto tw = w[j * stride];
                if (inverse) tw = std::conj(tw);
                auto u = a[i + j];
                auto v = a[i + j + len / 2] * tw;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

template <class Real>
void dft_naive(cvec<Real>& a, bool inverse) {
    const std::size_t n = a.size();
    using T = icf::detail::RealTraits<Real>;
    cvec<Real> out(n);
    const Real sign = inverse ? Real(1) : Real(-1);
    for (std::size_t p = 0; p < n; ++p) {
        std::complex<Real> acc{};
        for (std::size_t j = 0; j < n; ++j) {
            Real ang = sign * Real(2) * T::pi() * Real((p * j) % n) / Real(n);
            acc += a[j] * std::complex<Real>{T::cos(ang), T::sin(ang)};
        }
        out[p] = acc;
    }
    a = std::move(out);
}

} // namespace detail

/// In-place DFT; forward is unnormalised, callers divide by N as needed.
template <class Real>
void fft(cvec<Real>& a, bool inverse = false) {
    const std::size_t n = a.size();
    if (n == 0) return;
    if ((n & (n - 1)) == 0)
        detail::fft_pow2(a, inverse);
    else
        detail::dft_naive(a, inverse);
}

/// Normalised coefficients c_p = (1/N) sum_j f_j e^{-2 pi i p j / N},
/// p = 0..N-1 (negative frequencies wrap).
template <class Real>
cvec<Real> modes(const std::vector<Real>& f) {
    cvec<Real> a(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) a[j] = f[j];
    fft(a);
    const Real inv_n = Real(1) / Real(f.size());
    for (auto& c : a) c *= inv_n;
    return a;
}

/// Inverse of modes(): f_j = sum_p c_p e^{+2 pi i p j / N}, real part.
template <class Real>
std::vector<Real> synthesize(cvec<Real> a) {
    fft(a, /*inverse=*/true);
    std::vector<Real> f(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) f[j] = a[j].real();
    return f;
}

/// Signed frequency of mode index p in a length-n spectrum.
inline long signed_freq(std::size_t p, std::size_t n) {
    return p <= n / 2 ? static_cast<long>(p)
                      : static_cast<long>(p) - static_cast<long>(n);
}

/// Zero modes whose magnitude is below chop_rel times the largest one.
template <class Real>
void chop(cvec<Real>& a, Real chop_rel) {
    Real m{};
    using T = icf::detail::RealTraits<Real>;
    for (const auto& c : a) m = std::max(m, T::abs(c.real()) + T::abs(c.imag()));
    if (m == Real(0)) return;
    const Real floor = chop_rel * m;
    for (auto& c : a)
        if (T::abs(c.real()) + T::abs(c.imag()) < floor) c = {};
}

/// d^order/du^order of the trigonometric interpolant, sampled on the grid.
/// The Nyquist mode is zeroed (its derivative is not representable as a real
/// trigonometric polynomial of the same degree).
template <class Real>
std::vector<Real> derivative(const std::vector<Real>& f, int order,
                             Real chop_rel = icf::detail::RealTraits<Real>::chop()) {
    const std::size_t n = f.size();
    cvec<Real> a = modes(f);
    chop(a, chop_rel);
    for (std::size_t p = 0; p < n; ++p) {
        const long q = signed_freq(p, n);
        if (n % 2 == 0 && p == n / 2) {
            a[p] = {};
            continue;
        }
        std::complex<Real> mult{Real(1), Real(0)};
        const std::complex<Real> iq{Real(0), Real(q)};
        for (int o = 0; o < order; ++o) mult *= iq;
        a[p] *= mult;
    }
    return synthesize(std::move(a));
}

/// Periodic antiderivative of the zero-mean part of f, itself zero-mean.
template <class Real>
std::vector<Real> periodic_antiderivative(const std::vector<Real>& f) {
    const std::size_t n = f.size();
    cvec<Real> a = modes(f);
    for (std::size_t p = 0; p < n; ++p) {
        const long q = signed_freq(p, n);
        if (q == 0 || (n % 2 == 0 && p == n / 2)) {
            a[p] = {};
            continue;
        }
        a[p] /= std::complex<Real>{Real(0), Real(q)};
    }
    return synthesize(std::move(a));
}

/// Evaluate the band-limited interpolant of real samples at arbitrary u.
/// Coefficients are passed pre-computed so callers can amortise the
/// transform over many evaluation points.
template <class Real>
Real trig_eval(const cvec<Real>& a, Real u) {
    using T = icf::detail::RealTraits<Real>;
    const std::size_t n = a.size();
    Real acc = a[0].real();
    // exp(i p u) by recurrence; one cos/sin pair per evaluation point.
    const std::complex<Real> e{T::cos(u), T::sin(u)};
    std::complex<Real> ep = e;
    for (std::size_t p = 1; p < (n + 1) / 2; ++p) {
        acc += Real(2) * (a[p].real() * ep.real() - a[p].imag() * ep.imag());
        ep *= e;
    }
    if (n % 2 == 0)
        acc += a[n / 2].real() * T::cos(Real(n / 2) * u);
    return acc;
}

} // namespace icf::spectral

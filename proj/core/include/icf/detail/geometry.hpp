#pragma once

// Scalar-generic geometry pipeline for closed planar curves sampled
// uniformly in parameter. Arc-length derivatives of curvature are formed
// recursively as d/ds = v^{-1} d/du with spectral d/du, following the usual
// conversion between parameter and arc-length derivatives.

#include <array>
#include <cstddef>
#include <vector>

#include "icf/detail/real.hpp"
#include "icf/detail/spectral.hpp"
#include "icf/errors.hpp"

namespace icf::detail {

inline constexpr int kMinSamples = 16;
inline constexpr double kImmersionThreshold = 1e-6; // min v >= thr * mean v

template <class Real>
struct GeometryT {
    std::vector<Real> x, y;
    std::vector<Real> xu, yu;   // d gamma / du
    std::vector<Real> speed;    // v = |gamma_u|
    std::vector<Real> nx, ny;   // unit normal (-tau_2, tau_1)
    std::array<std::vector<Real>, 6> k; // k[l] = d^l k / ds^l, l = 0..5
    Real length{};
    Real energy{};              // E = 1/2 int k_s^2 ds
    Real total_curvature{};     // int k ds

    std::size_t n() const { return x.size(); }

    /// Quadrature of f against the arc measure: (2 pi / N) sum f_j v_j.
    /// Exact for integrands band-limited below N.
    Real integrate(const std::vector<Real>& f) const {
        Real acc{};
        for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * speed[j];
        using T = RealTraits<Real>;
        return Real(2) * T::pi() * acc / Real(f.size());
    }

    static GeometryT build(std::vector<Real> px, std::vector<Real> py,
                           int curvature_orders = 5) {
        using T = RealTraits<Real>;
        const std::size_t n = px.size();
        if (n < kMinSamples)
            throw BadParams("curve needs at least 16 samples, got " +
                            std::to_string(n));
        for (std::size_t j = 0; j < n; ++j)
            if (!T::finite(px[j]) || !T::finite(py[j]))
                throw NonFinite("non-finite sample at index " + std::to_string(j));

        GeometryT g;
        g.x = std::move(px);
        g.y = std::move(py);
        g.xu = spectral::derivative(g.x, 1);
        g.yu = spectral::derivative(g.y, 1);
        auto xuu = spectral::derivative(g.x, 2);
        auto yuu = spectral::derivative(g.y, 2);

        g.speed.resize(n);
        Real vmin{}, vsum{};
        for (std::size_t j = 0; j < n; ++j) {
            g.speed[j] = T::sqrt(g.xu[j] * g.xu[j] + g.yu[j] * g.yu[j]);
            vsum += g.speed[j];
            if (j == 0 || g.speed[j] < vmin) vmin = g.speed[j];
        }
        const Real vmean = vsum / Real(n);
        if (!(vmin > Real(0)) || !(vmin >= Real(kImmersionThreshold) * vmean))
            throw NotImmersed("min speed below immersion threshold");

        g.nx.resize(n);
        g.ny.resize(n);
        g.k[0].resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const Real v = g.speed[j];
            g.nx[j] = -g.yu[j] / v;
            g.ny[j] = g.xu[j] / v;
            // k = <gamma_ss, nu> = (x_u y_uu - y_u x_uu) / v^3
            g.k[0][j] = (g.xu[j] * yuu[j] - g.yu[j] * xuu[j]) / (v * v * v);
        }
        for (int l = 1; l <= curvature_orders; ++l) {
            g.k[l] = spectral::derivative(g.k[l - 1], 1);
            for (std::size_t j = 0; j < n; ++j) g.k[l][j] /= g.speed[j];
        }

        g.length = Real(2) * T::pi() * vmean;
        g.total_curvature = g.integrate(g.k[0]);
        if (curvature_orders >= 1) {
            std::vector<Real> ks2(n);
            for (std::size_t j = 0; j < n; ++j) ks2[j] = g.k[1][j] * g.k[1][j];
            g.energy = g.integrate(ks2) / Real(2);
        }
        return g;
    }

    /// Euler-Lagrange operator K = k_s4 + k^2 k_ss - 1/2 k k_s^2.
    std::vector<Real> el_operator() const {
        const std::size_t m = n();
        std::vector<Real> out(m);
        for (std::size_t j = 0; j < m; ++j)
            out[j] = k[4][j] + k[0][j] * k[0][j] * k[2][j] -
                     k[0][j] * k[1][j] * k[1][j] / Real(2);
        return out;
    }
};

} // namespace icf::detail

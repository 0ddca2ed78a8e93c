#include "icf/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "icf/detail/geometry.hpp"

namespace icf {

namespace {

constexpr double kWindingTol = 1e-4;
constexpr int kNewtonMaxIter = 60;

std::pair<std::vector<double>, std::vector<double>> split_xy(const CurveState& c) {
    std::vector<double> x(c.points.size()), y(c.points.size());
    for (std::size_t j = 0; j < c.points.size(); ++j) {
        x[j] = c.points[j].x;
        y[j] = c.points[j].y;
    }
    return {std::move(x), std::move(y)};
}

} // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double GeometryCache::integrate(std::span<const double> f) const {
    double acc = 0;
    for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * speed[j];
    return 2.0 * std::numbers::pi * acc / static_cast<double>(f.size());
}

double GeometryCache::sup_abs_k() const {
    double m = 0;
    for (double v : k()) m = std::max(m, std::fabs(v));
    return m;
}

double GeometryCache::min_speed() const {
    return *std::min_element(speed.begin(), speed.end());
}

double GeometryCache::mean_speed() const {
    double acc = 0;
    for (double v : speed) acc += v;
    return acc / static_cast<double>(speed.size());
}

GeometryCache build_geometry(const CurveState& curve) {
    auto [x, y] = split_xy(curve);
    auto g = detail::GeometryT<double>::build(std::move(x), std::move(y));

    GeometryCache cache;
    cache.curve = curve;
    const std::size_t n = g.n();
    cache.tangent.resize(n);
    cache.normal.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        cache.tangent[j] = {g.xu[j] / g.speed[j], g.yu[j] / g.speed[j]};
        cache.normal[j] = {g.nx[j], g.ny[j]};
    }
    cache.speed = std::move(g.speed);
    for (int l = 0; l <= 5; ++l) cache.k_deriv[l] = std::move(g.k[l]);
    cache.length = g.length;
    cache.energy = g.energy;
    cache.total_curvature = g.total_curvature;
    const double w = cache.total_curvature / (2.0 * std::numbers::pi);
    cache.winding = static_cast<int>(std::lround(w));
    cache.winding_residual = std::fabs(w - cache.winding);
    return cache;
}

CurveState resample_uniform_arclength(const CurveState& curve, int n_out) {
    if (n_out < detail::kMinSamples)
        throw BadParams("resample target below 16 samples");
    auto [x, y] = split_xy(curve);
    const std::size_t n = x.size();
    if (n < detail::kMinSamples) throw BadParams("curve needs at least 16 samples");
    for (std::size_t j = 0; j < n; ++j)
        if (!std::isfinite(x[j]) || !std::isfinite(y[j]))
            throw NonFinite("non-finite sample at index " + std::to_string(j));

    auto xu = spectral::derivative(x, 1);
    auto yu = spectral::derivative(y, 1);
    std::vector<double> v(n);
    double vmin = 0, vsum = 0;
    for (std::size_t j = 0; j < n; ++j) {
        v[j] = std::hypot(xu[j], yu[j]);
        vsum += v[j];
        if (j == 0 || v[j] < vmin) vmin = v[j];
    }
    const double vbar = vsum / static_cast<double>(n);
    if (!(vmin > 0) || !(vmin >= detail::kImmersionThreshold * vbar))
        throw NotImmersed("min speed below immersion threshold");
    const double length = 2.0 * std::numbers::pi * vbar;

    // s(u) = vbar*u + osc(u) - osc(0), strictly increasing since v > 0.
    auto osc = spectral::periodic_antiderivative(v);
    const double osc0 = osc[0];
    auto osc_modes = spectral::modes(osc);
    auto v_modes = spectral::modes(v);
    auto x_modes = spectral::modes(x);
    auto y_modes = spectral::modes(y);

    auto arc = [&](double u) {
        return vbar * u + spectral::trig_eval(osc_modes, u) - osc0;
    };

    CurveState out;
    out.points.resize(n_out);
    for (int j = 0; j < n_out; ++j) {
        const double target = static_cast<double>(j) * length / n_out;
        double u = target / vbar;
        bool ok = false;
        for (int it = 0; it < kNewtonMaxIter; ++it) {
            const double r = arc(u) - target;
            if (std::fabs(r) <= 1e-14 * length) {
                ok = true;
                break;
            }
            u -= r / spectral::trig_eval(v_modes, u);
        }
        if (!ok) throw Error("arc-length resampling did not converge");
        out.points[j] = {spectral::trig_eval(x_modes, u),
                         spectral::trig_eval(y_modes, u)};
    }
    return out;
}

int winding_number(const GeometryCache& cache) {
    if (cache.winding_residual > kWindingTol)
        throw AmbiguousWinding("winding residual " +
                               std::to_string(cache.winding_residual) +
                               " exceeds " + std::to_string(kWindingTol));
    return cache.winding;
}

double discrete_hausdorff(const CurveState& a, const CurveState& b) {
    auto one_sided = [](const CurveState& p, const CurveState& q) {
        double h = 0;
        for (const auto& pp : p.points) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& qq : q.points) best = std::min(best, norm(pp - qq));
            h = std::max(h, best);
        }
        return h;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

} // namespace icf

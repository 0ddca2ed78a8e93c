#include "icf/flow.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "icf/circle_fit.hpp"
#include "icf/detail/geometry.hpp"

namespace icf {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

// Along the flow E' = -||K||_2^2, so any consistent step dissipates about
// dt * ||K||^2. A trial step whose energy drop exceeds that by this factor is
// not tracking the flow (typically an unstable explicit step that jumped to
// some unrelated lower-energy curve) and is rejected like an increase.
constexpr double kDescentTrustFactor = 10.0;

std::vector<double> coordinate(const CurveState& c, bool y) {
    std::vector<double> out(c.points.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = y ? c.points[j].y : c.points[j].x;
    return out;
}

/// K nu sampled on the curve.
std::pair<std::vector<double>, std::vector<double>>
velocity_field(const GeometryCache& cache) {
    auto field = el_operator(cache);
    const int n = cache.n();
    std::vector<double> vx(n), vy(n);
    for (int j = 0; j < n; ++j) {
        vx[j] = field.values[j] * cache.normal[j].x;
        vy[j] = field.values[j] * cache.normal[j].y;
    }
    return {std::move(vx), std::move(vy)};
}

/// One IMEX Euler stage. The stiff part S = d^6/ds^6 is applied with the
/// speed frozen at its mean (exact in the uniform arc-length frame), so it
/// is diagonal per Fourier mode: symbol -(p / vbar)^6. The remainder
/// R = K nu - S gamma is treated explicitly and
///   (Id - dt S) gamma_new = gamma_old + dt R(gamma_old)
/// is solved mode by mode. Circles are exact fixed points of this map.
CurveState imex_advance(const FlowState& state, double dt) {
    const int n = state.cache.n();
    const double vbar = state.cache.length / kTau;
    auto [kx, ky] = velocity_field(state.cache);

    auto solve = [&](const std::vector<double>& coord, const std::vector<double>& knu) {
        auto hat = spectral::modes(coord);
        auto stiff = hat;
        spectral::chop(stiff, detail::RealTraits<double>::chop());
        // S gamma in physical space from the chopped modes.
        for (std::size_t p = 0; p < stiff.size(); ++p) {
            const double q = static_cast<double>(spectral::signed_freq(p, n));
            stiff[p] *= -std::pow(q / vbar, 6);
        }
        auto s_phys = spectral::synthesize(std::move(stiff));
        std::vector<double> r_phys(n);
        for (int j = 0; j < n; ++j) r_phys[j] = knu[j] - s_phys[j];
        auto r_hat = spectral::modes(r_phys);
        for (std::size_t p = 0; p < hat.size(); ++p) {
            const double q = static_cast<double>(spectral::signed_freq(p, n));
            hat[p] = (hat[p] + dt * r_hat[p]) / (1.0 + dt * std::pow(q / vbar, 6));
        }
        return spectral::synthesize(std::move(hat));
    };

    auto x = solve(coordinate(state.curve, false), kx);
    auto y = solve(coordinate(state.curve, true), ky);
    CurveState out;
    out.points.resize(n);
    for (int j = 0; j < n; ++j) out.points[j] = {x[j], y[j]};
    return out;
}

CurveState rk4_advance(const FlowState& state, double dt) {
    const int n = state.cache.n();
    auto eval = [&](const CurveState& c, bool reuse_cache) {
        return reuse_cache ? velocity_field(state.cache)
                           : velocity_field(build_geometry(c));
    };
    auto shift = [&](const CurveState& base,
                     const std::pair<std::vector<double>, std::vector<double>>& v,
                     double s) {
        CurveState out = base;
        for (int j = 0; j < n; ++j)
            out.points[j] = base.points[j] + s * Vec2{v.first[j], v.second[j]};
        return out;
    };

    const auto& c0 = state.curve;
    auto v1 = eval(c0, true);
    auto v2 = eval(shift(c0, v1, dt / 2), false);
    auto v3 = eval(shift(c0, v2, dt / 2), false);
    auto v4 = eval(shift(c0, v3, dt), false);

    CurveState out = c0;
    for (int j = 0; j < n; ++j) {
        const Vec2 vel{(v1.first[j] + 2 * v2.first[j] + 2 * v3.first[j] + v4.first[j]) / 6.0,
                       (v1.second[j] + 2 * v2.second[j] + 2 * v3.second[j] + v4.second[j]) / 6.0};
        out.points[j] = c0.points[j] + dt * vel;
    }
    return out;
}

} // namespace

ElOperatorField el_operator(const GeometryCache& cache) {
    ElOperatorField field;
    const int n = cache.n();
    field.values.resize(n);
    for (int j = 0; j < n; ++j)
        field.values[j] = cache.k_s4()[j] +
                          cache.k()[j] * cache.k()[j] * cache.k_ss()[j] -
                          0.5 * cache.k()[j] * cache.k_s()[j] * cache.k_s()[j];
    std::vector<double> sq(n);
    for (int j = 0; j < n; ++j) sq[j] = field.values[j] * field.values[j];
    field.l2_norm_sq = cache.integrate(sq);
    return field;
}

VariationReport first_variation_check(const CurveState& curve,
                                      std::span<const double> v_field,
                                      std::span<const double> h_values) {
    using Q = detail::verify_real;
    const std::size_t n = curve.points.size();
    if (v_field.size() != n) throw BadParams("v_field size mismatch");

    {
        // Contract: V band-limited to modes <= N/8.
        std::vector<double> v(v_field.begin(), v_field.end());
        auto vm = spectral::modes(v);
        double mx = 0, tail = 0;
        for (std::size_t p = 0; p < n; ++p) {
            const double mag = std::abs(vm[p]);
            mx = std::max(mx, mag);
            if (std::abs(spectral::signed_freq(p, n)) > static_cast<long>(n / 8))
                tail = std::max(tail, mag);
        }
        if (mx > 0 && tail > 1e-10 * mx)
            throw BadParams("v_field is not band-limited to N/8");
    }

    std::vector<Q> x(n), y(n), v(n);
    for (std::size_t j = 0; j < n; ++j) {
        x[j] = Q(curve.points[j].x);
        y[j] = Q(curve.points[j].y);
        v[j] = Q(v_field[j]);
    }
    auto base = detail::GeometryT<Q>::build(x, y, 4);
    auto el = base.el_operator();

    VariationReport report;
    std::vector<Q> integrand(n);
    for (std::size_t j = 0; j < n; ++j) integrand[j] = v[j] * el[j];
    report.reference = -static_cast<double>(base.integrate(integrand));
    for (std::size_t j = 0; j < n; ++j) integrand[j] = v[j] * base.k[0][j];
    report.length_reference = -static_cast<double>(base.integrate(integrand));

    {
        auto cache = build_geometry(curve);
        auto field = el_operator(cache);
        std::vector<double> vk(n);
        for (std::size_t j = 0; j < n; ++j) vk[j] = v_field[j] * field.values[j];
        report.reference_double = -cache.integrate(vk);
    }

    const Q e0 = base.energy;
    const Q l0 = base.length;
    for (double h : h_values) {
        std::vector<Q> px(n), py(n);
        for (std::size_t j = 0; j < n; ++j) {
            px[j] = x[j] + Q(h) * v[j] * base.nx[j];
            py[j] = y[j] + Q(h) * v[j] * base.ny[j];
        }
        detail::GeometryT<Q> pert;
        try {
            pert = detail::GeometryT<Q>::build(std::move(px), std::move(py), 1);
        } catch (const NotImmersed&) {
            throw ImmersionLost("perturbation h=" + std::to_string(h) +
                                " breaks immersion");
        }
        VariationSample s;
        s.h = h;
        s.fd_energy = static_cast<double>((pert.energy - e0) / Q(h));
        s.fd_length = static_cast<double>((pert.length - l0) / Q(h));
        s.deviation = std::fabs(s.fd_energy - report.reference);
        report.samples.push_back(s);
    }
    return report;
}

void FlowConfig::validate() const {
    if (!(0 < dt_min && dt_min <= dt_initial && dt_initial <= dt_max))
        throw BadParams("need 0 < dt_min <= dt_initial <= dt_max");
    if (!(small_energy_threshold > 0)) throw BadParams("small_energy_threshold must be > 0");
    if (resample_every < 1) throw BadParams("resample_every must be >= 1");
    if (snapshot_stride < 1) throw BadParams("snapshot_stride must be >= 1");
    if (!(t_end > 0)) throw BadParams("t_end must be > 0");
    if (!(dt_growth >= 1.0)) throw BadParams("dt_growth must be >= 1");
    if (convergence_snapshots < 1) throw BadParams("convergence_snapshots must be >= 1");
}

DiagnosticsRecord diagnostics(const FlowState& state) {
    const auto& g = state.cache;
    DiagnosticsRecord r;
    r.t = state.time;
    r.length = g.length;
    r.energy = g.energy;
    r.scale_energy = g.scale_invariant_energy();
    r.k_l2sq = el_operator(g).l2_norm_sq;
    r.k_sup = g.sup_abs_k();
    std::vector<double> sq(g.n());
    for (int j = 0; j < g.n(); ++j) sq[j] = g.k_s5()[j] * g.k_s5()[j];
    r.q_blowup = g.length + g.integrate(sq);
    r.circle_residual = fit_circle(state.curve).residual;
    r.min_speed = g.min_speed();
    return r;
}

FlowState make_flow_state(CurveState initial, const FlowConfig& config) {
    config.validate();
    FlowState state;
    state.cache = build_geometry(initial);
    state.curve = std::move(initial);
    state.last_dt = config.dt_initial;
    state.initial_energy = state.cache.energy;
    return state;
}

double step(FlowState& state, const FlowConfig& config) {
    double dt = std::clamp(state.last_dt, config.dt_min, config.dt_max);
    const auto k_old = el_operator(state.cache);
    const double e_old = state.cache.energy;
    // Tangential drift scales with the velocity; once the state is
    // numerically stationary there is nothing to redistribute and the
    // re-interpolation blip would dominate the (vanishing) dissipation.
    const bool stationary =
        std::pow(state.cache.length, 9) * k_old.l2_norm_sq < config.tol_conv;
    const bool resample_now =
        (state.step_count + 1) % config.resample_every == 0 && !stationary;

    for (;;) {
        bool immersion_failed = false;
        std::optional<GeometryCache> accepted;
        CurveState candidate;
        try {
            candidate = config.scheme == Scheme::imex_spectral
                            ? imex_advance(state, dt)
                            : rk4_advance(state, dt);
            if (resample_now)
                candidate = resample_uniform_arclength(candidate, state.cache.n());
            auto cache = build_geometry(candidate);
            const double budget =
                config.energy_increase_tolerance * dt * k_old.l2_norm_sq;
            const double drop = e_old - cache.energy;
            const double dissipation_scale =
                dt * std::max(k_old.l2_norm_sq, el_operator(cache).l2_norm_sq);
            const bool consistent =
                drop <= kDescentTrustFactor * dissipation_scale + 1e-14 * e_old;
            if (cache.energy <= e_old + budget && consistent)
                accepted = std::move(cache);
        } catch (const NotImmersed&) {
            immersion_failed = true;
        } catch (const NonFinite&) {
            immersion_failed = false; // blow-up inside a trial step: reject
        }

        if (accepted) {
            state.curve = std::move(candidate);
            const double k_new = el_operator(*accepted).l2_norm_sq;
            state.cache = std::move(*accepted);
            state.dissipation += dt * 0.5 * (k_old.l2_norm_sq + k_new);
            state.time += dt;
            ++state.step_count;
            state.last_dt = std::min(dt * config.dt_growth, config.dt_max);
            return dt;
        }

        dt /= 2;
        if (dt < config.dt_min) {
            if (immersion_failed)
                throw ImmersionLost("immersion lost at t=" + std::to_string(state.time));
            throw StepFloorReached("no accepted step above dt_min at t=" +
                                   std::to_string(state.time));
        }
    }
}

const char* to_string(StopReason reason) {
    switch (reason) {
    case StopReason::converged: return "converged";
    case StopReason::t_end: return "t_end";
    case StopReason::step_floor: return "step_floor";
    case StopReason::immersion_lost: return "immersion_lost";
    }
    return "unknown";
}

RunResult run(const CurveState& initial, const FlowConfig& config,
              const SnapshotObserver& on_snapshot) {
    RunResult result;
    FlowState state = make_flow_state(initial, config);
    result.records.push_back(diagnostics(state));
    if (on_snapshot) on_snapshot(state, result.records.back());
    int consecutive = 0;

    try {
        for (;;) {
            const double remaining = config.t_end - state.time;
            if (remaining <= 0.5 * config.dt_min) {
                result.reason = StopReason::t_end;
                break;
            }
            FlowConfig clipped = config;
            clipped.dt_max = std::min(config.dt_max, remaining);
            clipped.dt_initial = std::min(config.dt_initial, clipped.dt_max);
            clipped.dt_min = std::min(config.dt_min, clipped.dt_max);
            step(state, clipped);

            if (state.step_count % config.snapshot_stride == 0) {
                auto rec = diagnostics(state);
                result.records.push_back(rec);
                if (on_snapshot) on_snapshot(state, rec);
                const double scale_inv = std::pow(rec.length, 9) * rec.k_l2sq;
                if (scale_inv < config.tol_conv && rec.circle_residual < config.tol_circ)
                    ++consecutive;
                else
                    consecutive = 0;
                if (consecutive >= config.convergence_snapshots) {
                    result.reason = StopReason::converged;
                    break;
                }
            }
        }
    } catch (const StepFloorReached& e) {
        result.reason = StopReason::step_floor;
        result.error_detail = e.what();
    } catch (const ImmersionLost& e) {
        result.reason = StopReason::immersion_lost;
        result.error_detail = e.what();
    }

    if (result.records.empty() || result.records.back().t != state.time) {
        result.records.push_back(diagnostics(state));
        if (on_snapshot) on_snapshot(state, result.records.back());
    }
    result.final_state = std::move(state);
    return result;
}

} // namespace icf

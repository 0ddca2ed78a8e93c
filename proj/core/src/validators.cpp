#include "icf/validators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "icf/curve_io.hpp"

namespace icf {

namespace {

constexpr double kPi = std::numbers::pi;

CurveState scaled(const CurveState& c, double rho) {
    CurveState out = c;
    for (auto& p : out.points) p = rho * p;
    return out;
}

double stationarity_measure(const GeometryCache& cache) {
    return std::pow(cache.length, 9) * el_operator(cache).l2_norm_sq;
}

double rel_diff(double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) / scale;
}

} // namespace

RigidityProfile rigidity_profile(const GeometryCache& cache) {
    const int n = cache.n();
    RigidityProfile prof;
    prof.q.resize(n);
    prof.m.resize(n);
    prof.n.resize(n);
    const auto& k = cache.k();
    const auto& ks = cache.k_s();
    const auto& kss = cache.k_ss();
    const auto& ks3 = cache.k_s3();
    for (int j = 0; j < n; ++j) {
        prof.m[j] = ks3[j];
        prof.n[j] = kss[j] * k[j] - 0.5 * ks[j] * ks[j];
        prof.q[j] = ks3[j] * ks3[j] + kss[j] * kss[j] * k[j] * k[j] +
                    0.25 * std::pow(ks[j], 4) - kss[j] * ks[j] * ks[j] * k[j];
    }
    prof.mean_q = cache.integrate(prof.q) / cache.length;
    prof.max_deviation = 0;
    for (double q : prof.q)
        prof.max_deviation = std::max(prof.max_deviation, std::fabs(q - prof.mean_q));
    prof.integral_m = cache.integrate(prof.m);
    prof.integral_n = cache.integrate(prof.n);
    prof.energy = cache.energy;
    return prof;
}

const char* to_string(CheckStatus status) {
    switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::informational: return "informational";
    case CheckStatus::hypothesis_not_met: return "hypothesis_not_met";
    case CheckStatus::degenerate: return "degenerate";
    }
    return "unknown";
}

InequalityReport check_curvature_bound(const GeometryCache& cache) {
    auto evaluate = [](const GeometryCache& g, InequalityReport& r) {
        const int w = std::abs(g.winding);
        r.lhs = g.length * g.sup_abs_k();
        r.rhs = std::sqrt(2.0 * std::pow(g.length, 3) * g.energy) + 2.0 * w * kPi;
        r.slack = r.rhs - r.lhs;
    };

    InequalityReport rep;
    rep.id = "curvature_bound";
    evaluate(cache, rep);
    const bool ok = rep.slack >= -1e-10 * rep.rhs;
    rep.status = cache.winding == 0
                     ? CheckStatus::informational
                     : (ok ? CheckStatus::pass : CheckStatus::fail);
    if (cache.winding == 0)
        rep.note = "winding 0: evaluated with |w| convention";
    else if (std::fabs(rep.slack) <= 1e-10 * rep.rhs)
        rep.note = "equality (round circle)";

    // Both sides are dimensionless, so the slack itself must be reproduced
    // under rescaling.
    for (double rho : {0.5, 2.0}) {
        InequalityReport r2;
        evaluate(build_geometry(scaled(cache.curve, rho)), r2);
        rep.scale_consistency = std::max(
            rep.scale_consistency, std::fabs(r2.slack - rep.slack) /
                                       std::max(std::fabs(rep.rhs), 1e-300));
    }
    return rep;
}

InequalityReport check_stability_estimate(const GeometryCache& cache) {
    if (stationarity_measure(cache) < kStationarityFloor)
        throw DegenerateDenominator(
            "||K||_2 at the stationarity floor; stability ratio undefined");

    auto ratio_of = [](const GeometryCache& g) {
        return g.energy /
               (std::pow(g.length, 1.5) * std::sqrt(el_operator(g).l2_norm_sq));
    };

    InequalityReport rep;
    rep.id = "stability_estimate";
    rep.ratio = ratio_of(cache);
    rep.lhs = cache.energy;
    rep.rhs = std::pow(cache.length, 1.5) * std::sqrt(el_operator(cache).l2_norm_sq);
    rep.slack = 0;
    for (double rho : {0.5, 2.0}) {
        const double r2 = ratio_of(build_geometry(scaled(cache.curve, rho)));
        rep.scale_consistency = std::max(rep.scale_consistency, rel_diff(r2, rep.ratio));
    }
    rep.status = rep.scale_consistency < 1e-10 ? CheckStatus::pass : CheckStatus::fail;
    return rep;
}

InequalityReport check_gap_estimate(const GeometryCache& cache, double threshold,
                                    double ratio_floor) {
    InequalityReport rep;
    rep.id = "gap_estimate";
    const double l3e = cache.scale_invariant_energy();
    if (stationarity_measure(cache) < kStationarityFloor) {
        rep.status = CheckStatus::informational;
        rep.note = "trivially stationary";
        return rep;
    }
    if (l3e >= threshold) {
        rep.status = CheckStatus::hypothesis_not_met;
        rep.note = "L^3 E = " + format_double(l3e) + " >= threshold " +
                   format_double(threshold);
        rep.ratio = std::pow(cache.length, 9) * el_operator(cache).l2_norm_sq / l3e;
        return rep;
    }
    auto ratio_of = [](const GeometryCache& g) {
        return std::pow(g.length, 9) * el_operator(g).l2_norm_sq /
               g.scale_invariant_energy();
    };
    rep.ratio = ratio_of(cache);
    rep.lhs = rep.ratio;
    rep.rhs = ratio_floor;
    rep.slack = rep.ratio - ratio_floor;
    for (double rho : {0.5, 2.0}) {
        const double r2 = ratio_of(build_geometry(scaled(cache.curve, rho)));
        rep.scale_consistency = std::max(rep.scale_consistency, rel_diff(r2, rep.ratio));
    }
    rep.status = rep.slack >= 0 ? CheckStatus::pass : CheckStatus::fail;
    return rep;
}

InequalityReport
check_monotone_scale_invariant_energy(std::span<const DiagnosticsRecord> trajectory,
                                      double threshold) {
    if (trajectory.empty()) throw InsufficientData("empty trajectory");
    InequalityReport rep;
    rep.id = "scale_invariant_energy_monotone";
    const double initial = trajectory.front().scale_energy;
    double peak = initial;
    for (const auto& r : trajectory) peak = std::max(peak, r.scale_energy);
    rep.lhs = peak;
    rep.rhs = initial + 1e-8;
    rep.slack = rep.rhs - rep.lhs;
    if (initial >= threshold) {
        rep.status = CheckStatus::hypothesis_not_met;
        rep.note = "(L^3 E)(0) = " + format_double(initial) + " >= threshold " +
                   format_double(threshold);
        return rep;
    }
    // L^3 E is scale-invariant; the verdict is unchanged under rescaling.
    rep.status = rep.slack >= 0 ? CheckStatus::pass : CheckStatus::fail;
    return rep;
}

InequalityReport check_length_bounds(std::span<const DiagnosticsRecord> trajectory,
                                     double threshold, double band) {
    if (trajectory.empty()) throw InsufficientData("empty trajectory");
    InequalityReport rep;
    rep.id = "length_bounds";
    const double l0 = trajectory.front().length;
    double sup = l0, inf = l0, worst = 0;
    for (const auto& r : trajectory) {
        sup = std::max(sup, r.length);
        inf = std::min(inf, r.length);
        worst = std::max(worst, std::fabs(std::log(r.length / l0)));
    }
    rep.lhs = worst;
    rep.rhs = band;
    rep.slack = band - worst;
    rep.ratio = sup / inf;
    rep.note = "sup L = " + format_double(sup) + ", inf L = " + format_double(inf);
    if (trajectory.front().scale_energy >= threshold) {
        rep.status = CheckStatus::hypothesis_not_met;
        return rep;
    }
    rep.status = rep.slack >= 0 ? CheckStatus::pass : CheckStatus::fail;
    return rep;
}

DecayFit fit_exponential_decay(std::span<const DiagnosticsRecord> trajectory,
                               double t_begin, double t_end) {
    std::vector<std::pair<double, double>> pts; // (t, log E)
    for (const auto& r : trajectory) {
        if (r.t < t_begin || r.t > t_end) continue;
        if (!(r.energy > 0))
            throw NonPositiveEnergy("E <= 0 at t = " + format_double(r.t));
        pts.emplace_back(r.t, std::log(r.energy));
    }
    if (pts.size() < 20)
        throw InsufficientData("decay window holds " + std::to_string(pts.size()) +
                               " samples, need 20");

    // Least squares for log E = b - c t.
    double st = 0, sy = 0, stt = 0, sty = 0;
    const auto n = static_cast<double>(pts.size());
    for (auto [t, y] : pts) {
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double det = n * stt - st * st;
    const double slope = (n * sty - st * sy) / det;
    const double intercept = (sy * stt - st * sty) / det;

    DecayFit fit;
    fit.rate = -slope;
    fit.amplitude = std::exp(intercept);
    fit.samples = static_cast<int>(pts.size());
    double acc = 0;
    for (auto [t, y] : pts) {
        const double r = y - (intercept + slope * t);
        acc += r * r;
    }
    fit.residual = std::sqrt(acc / n);
    return fit;
}

double directional_derivative(const GeometryCache& cache,
                              std::span<const double> v_field) {
    auto field = el_operator(cache);
    std::vector<double> vk(field.values.size());
    for (std::size_t j = 0; j < vk.size(); ++j) vk[j] = v_field[j] * field.values[j];
    return -cache.integrate(vk);
}

CurveState random_perturbed_circle(std::mt19937_64& rng, const CorpusParams& params) {
    std::uniform_int_distribution<int> mode_count(params.min_modes, params.max_modes);
    std::uniform_int_distribution<int> mode(params.min_mode, params.max_mode);
    std::uniform_real_distribution<double> amp(params.min_amp, params.max_amp);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);

    for (int attempt = 0; attempt < 50; ++attempt) {
        const int count = mode_count(rng);
        std::vector<std::array<double, 3>> terms;
        for (int i = 0; i < count; ++i)
            terms.push_back({static_cast<double>(mode(rng)), amp(rng), phase(rng)});

        CurveState c;
        c.points.resize(params.n);
        for (int j = 0; j < params.n; ++j) {
            const double u = 2.0 * kPi * j / params.n;
            double rad = params.radius;
            for (const auto& t : terms) rad += t[1] * std::cos(t[0] * u + t[2]);
            c.points[j] = {rad * std::cos(params.winding * u),
                           rad * std::sin(params.winding * u)};
        }
        try {
            (void)build_geometry(c);
            return c;
        } catch (const NotImmersed&) {
            continue;
        }
    }
    throw BadParams("could not draw an immersed perturbed circle");
}

std::string inequality_to_json(const InequalityReport& r) {
    std::ostringstream out;
    out << "{\"id\": \"" << r.id << "\", \"lhs\": " << format_double(r.lhs)
        << ", \"rhs\": " << format_double(r.rhs)
        << ", \"slack\": " << format_double(r.slack)
        << ", \"ratio\": " << format_double(r.ratio)
        << ", \"scale_consistency\": " << format_double(r.scale_consistency)
        << ", \"status\": \"" << to_string(r.status) << "\""
        << ", \"note\": \"" << r.note << "\"}";
    return out.str();
}

std::string rigidity_to_json(const RigidityProfile& p) {
    std::ostringstream out;
    out << "{\"mean_q\": " << format_double(p.mean_q)
        << ", \"max_deviation\": " << format_double(p.max_deviation)
        << ", \"integral_m\": " << format_double(p.integral_m)
        << ", \"integral_n\": " << format_double(p.integral_n)
        << ", \"energy\": " << format_double(p.energy) << "}";
    return out.str();
}

std::string decay_to_json(const DecayFit& f) {
    std::ostringstream out;
    out << "{\"rate\": " << format_double(f.rate)
        << ", \"amplitude\": " << format_double(f.amplitude)
        << ", \"residual\": " << format_double(f.residual)
        << ", \"samples\": " << f.samples << "}";
    return out.str();
}

std::string sweep_csv_header() {
    return "curve,check,lhs,rhs,slack,ratio,scale_consistency,status\n";
}

std::string sweep_csv_row(const std::string& curve_id, const InequalityReport& r) {
    std::ostringstream out;
    out << curve_id << ',' << r.id << ',' << format_double(r.lhs) << ','
        << format_double(r.rhs) << ',' << format_double(r.slack) << ','
        << format_double(r.ratio) << ',' << format_double(r.scale_consistency) << ','
        << to_string(r.status) << '\n';
    return out.str();
}

} // namespace icf

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is evaluated at the stated tolerance at desk scale
// (N <= 512); random corpora are seeded and deterministic.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "icf/checkpoint.hpp"
#include "icf/curve_io.hpp"
#include "icf/flow.hpp"
#include "icf/presets.hpp"
#include "icf/run_artifacts.hpp"
#include "icf/spectrum.hpp"
#include "icf/validators.hpp"

namespace fs = std::filesystem;
using namespace icf;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] C%-2d %-34s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double wall_seconds(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

// ---------------------------------------------------------------------------
// C1: finite-difference directional derivative of E matches -int V K ds with
// first-order convergence in h down to a rounding floor <= 1e-8 relative, on
// 20 random band-limited perturbed circles. Runtime < 10 s.
void criterion_gradient_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<int> mode(2, 6);
    std::uniform_real_distribution<double> amp(0.01, 0.05);
    std::uniform_real_distribution<double> phase(0.0, kTau);

    const int n = 256; // band-limited data; N=256 keeps aliasing far below 1e-8
    double worst_floor = 0;
    double ratio_lo = 1e30, ratio_hi = 0;
    bool all_ok = true;

    for (int trial = 0; trial < 20; ++trial) {
        const int m = mode(rng);
        const double eps = amp(rng), ph = phase(rng);
        auto curve = preset_curve(
            "fourier_perturbed_circle",
            {{"m", double(m)}, {"eps", eps}, {"phase", ph}}, n);
        std::vector<double> v(n);
        for (int j = 0; j < n; ++j) v[j] = std::cos(m * (kTau * j / n) + ph);

        std::vector<double> hs;
        for (int i = 0; i < 31; ++i) hs.push_back(1e-3 * std::pow(2.0, -i));
        auto rep = first_variation_check(curve, v, hs);

        const double scale = std::fabs(rep.reference);
        double floor = 1e30;
        for (const auto& s : rep.samples) floor = std::min(floor, s.deviation / scale);
        worst_floor = std::max(worst_floor, floor);

        // First-order decay while well above the floor.
        for (std::size_t i = 0; i + 1 < rep.samples.size(); ++i) {
            const double d0 = rep.samples[i].deviation / scale;
            const double d1 = rep.samples[i + 1].deviation / scale;
            if (d0 > 1e4 * floor && d1 > 1e4 * floor) {
                const double r = d0 / d1;
                ratio_lo = std::min(ratio_lo, r);
                ratio_hi = std::max(ratio_hi, r);
            }
        }
        all_ok = all_ok && floor <= 1e-8;
    }
    const double secs = wall_seconds(t0);
    const bool order_ok = ratio_lo > 1.6 && ratio_hi < 2.4;
    report(1, "gradient identity", all_ok && order_ok && secs < 10.0,
           fmt("worst floor %.2e (<=1e-8), halving ratios [%.2f, %.2f], %.1fs",
               worst_floor, ratio_lo, ratio_hi, secs));
}

// ---------------------------------------------------------------------------
// C2: K = 0 on w-circles (w = 1, 2, 3) to 1e-8, and the flow holds them
// fixed to 1e-6 Hausdorff over 1e3 steps.
void criterion_equilibrium_exactness() {
    double worst_k = 0, worst_drift = 0;
    for (int w : {1, 2, 3}) {
        auto circle = preset_curve("omega_circle", {{"r", 1.0}, {"omega", double(w)}}, 128);
        auto field = el_operator(build_geometry(circle));
        for (double v : field.values) worst_k = std::max(worst_k, std::fabs(v));

        FlowConfig config;
        config.dt_initial = config.dt_max = 1e-4;
        config.t_end = 1.0;
        auto state = make_flow_state(circle, config);
        for (int i = 0; i < 1000; ++i) (void)step(state, config);
        worst_drift = std::max(worst_drift, discrete_hausdorff(circle, state.curve));
    }
    report(2, "equilibrium exactness", worst_k <= 1e-8 && worst_drift <= 1e-6,
           fmt("max|K| %.2e (<=1e-8), Hausdorff drift %.2e (<=1e-6) over 1000 steps",
               worst_k, worst_drift));
}

// ---------------------------------------------------------------------------
// C3: on the a=1.1 ellipse, E non-increasing at every accepted step, and the
// dissipation-balance residual |E(t) - E(0) + D(t)| shrinks at the scheme's
// order when dt is halved.
void criterion_energy_monotonicity() {
    bool monotone = true;
    {
        FlowConfig config;
        config.dt_initial = 1e-8;
        config.dt_max = 1e-5;
        config.t_end = 1.0;
        auto state = make_flow_state(preset_curve("ellipse", {{"a", 1.1}, {"b", 1.0}}, 128),
                                     config);
        double prev = state.cache.energy;
        for (int i = 0; i < 200; ++i) {
            (void)step(state, config);
            monotone = monotone && state.cache.energy <= prev;
            prev = state.cache.energy;
        }
    }

    auto residual = [](double dt) {
        FlowConfig config;
        config.dt_initial = config.dt_min = config.dt_max = dt;
        config.t_end = 1.0;
        auto state = make_flow_state(preset_curve("ellipse", {{"a", 1.1}, {"b", 1.0}}, 128),
                                     config);
        const double e0 = state.cache.energy;
        while (state.time < 2e-4 - dt / 2) (void)step(state, config);
        return std::fabs(state.cache.energy - e0 + state.dissipation);
    };
    const double r1 = residual(4e-7), r2 = residual(2e-7), r3 = residual(1e-7);
    const bool order_ok = r1 / r2 > 1.5 && r1 / r2 < 3.0 && r2 / r3 > 1.5 && r2 / r3 < 3.0;
    report(3, "energy monotonicity + balance", monotone && order_ok,
           fmt("monotone=%d, residuals %.2e / %.2e / %.2e (halving ratios %.2f, %.2f)",
               monotone ? 1 : 0, r1, r2, r3, r1 / r2, r2 / r3));
}

// Shared by C4/C5/C7/C8: converged perturbed-circle runs.
RunResult perturbed_run(double eps, std::vector<FlowState>* snapshots = nullptr) {
    FlowConfig config;
    config.dt_initial = 1e-7;
    config.dt_max = 2e-3;
    config.t_end = 5.0;
    auto initial = preset_curve("fourier_perturbed_circle", {{"m", 2.0}, {"eps", eps}}, 256);
    SnapshotObserver obs;
    if (snapshots)
        obs = [snapshots](const FlowState& s, const DiagnosticsRecord&) {
            snapshots->push_back(s);
        };
    return run(initial, config, obs);
}

// ---------------------------------------------------------------------------
// C4: the m=2, eps=0.05 perturbation reaches circle_fit_residual < 1e-6 and
// max k - min k < 1e-6; trailing-window exponential fit has c > 0 with
// log-residual < 1e-2. Runtime < 60 s.
void criterion_convergence_to_round(const RunResult& result, double secs) {
    const bool converged = result.reason == StopReason::converged;
    const auto& g = result.final_state.cache;
    double kmin = g.k()[0], kmax = g.k()[0];
    for (double k : g.k()) {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
    }
    const double spread = kmax - kmin;
    const double resid = result.records.back().circle_residual;

    // Fit over the trailing half of the snapshots still above the rounding
    // floor of E.
    const double e0 = result.records.front().energy;
    double t_star = 0;
    for (const auto& r : result.records)
        if (r.energy > 1e-20 * e0) t_star = r.t;
    DecayFit fit{};
    bool fit_ok = false;
    std::string fit_note = "n/a";
    try {
        fit = fit_exponential_decay(result.records, t_star / 2, t_star);
        fit_ok = fit.rate > 0 && fit.residual < 1e-2;
        fit_note = fmt("rate %.3g residual %.1e", fit.rate, fit.residual);
    } catch (const Error& e) {
        fit_note = e.what();
    }
    report(4, "convergence to round",
           converged && spread < 1e-6 && resid < 1e-6 && fit_ok && secs < 60.0,
           fmt("%s, k spread %.2e, residual %.2e, %s, %.1fs",
               to_string(result.reason), spread, resid, fit_note.c_str(), secs));
}

// ---------------------------------------------------------------------------
// C5: for the eps=0.02 run, max_t (L^3 E) <= (L^3 E)(0) + 1e-8 and
// |log(L/L0)| < 0.5 throughout.
void criterion_scale_invariant_monotonicity(const RunResult& result) {
    auto mono = check_monotone_scale_invariant_energy(result.records, 50.0);
    auto len = check_length_bounds(result.records, 50.0, 0.5);
    report(5, "scale-invariant monotonicity",
           mono.status == CheckStatus::pass && len.status == CheckStatus::pass,
           fmt("max L3E - initial = %.2e (<=1e-8), sup|log L/L0| = %.2e (<0.5)",
               mono.lhs - (mono.rhs - 1e-8), len.lhs));
}

// ---------------------------------------------------------------------------
// C6: mode-gap inequality on a 50-curve corpus (w in {1, 2}), the
// intermediate bound |a_w| <= 2 L^2 E, and exact C_w values.
void criterion_mode_gap(const std::vector<GeometryCache>& corpus) {
    bool slack_ok = true, bound_ok = true;
    double worst_slack_rel = 1e30;
    for (const auto& g : corpus) {
        auto rep = mode_gap_report(g);
        slack_ok = slack_ok && rep.slack >= -rep.tolerance;
        bound_ok = bound_ok && rep.a_omega_abs <= rep.a_omega_bound;
        worst_slack_rel =
            std::min(worst_slack_rel, rep.slack / std::max(1.0, rep.c_omega_value *
                                                                    rep.p_quantity));
    }
    const bool cw_ok = c_omega(1) == 9.0 / 16.0 &&
                       std::fabs(c_omega(2) - 25.0 / 81.0) < 4e-16;
    report(6, "mode-gap inequality", slack_ok && bound_ok && cw_ok,
           fmt("min relative slack %.2e (>= -1e-8), |a_w| bound %s, C_1 = 9/16, "
               "C_2 = 25/81: %s",
               worst_slack_rel, bound_ok ? "holds" : "VIOLATED",
               cw_ok ? "exact" : "MISMATCH"));
}

// ---------------------------------------------------------------------------
// C7: curvature bound on the corpus and on every flow snapshot; equality on
// exact circles to 1e-10.
void criterion_curvature_bound(const std::vector<GeometryCache>& corpus,
                               const std::vector<const RunResult*>& runs) {
    bool corpus_ok = true;
    for (const auto& g : corpus)
        corpus_ok = corpus_ok && check_curvature_bound(g).status == CheckStatus::pass;

    bool snapshots_ok = true;
    int snapshots = 0;
    for (const auto* r : runs) {
        for (const auto& rec : r->records) {
            // Winding 1 is preserved along these runs.
            const double lhs = rec.length * rec.k_sup;
            const double rhs =
                std::sqrt(2.0 * std::pow(rec.length, 3) * rec.energy) + kTau;
            snapshots_ok = snapshots_ok && lhs <= rhs * (1 + 1e-10);
            ++snapshots;
        }
    }

    auto circle = check_curvature_bound(build_geometry(preset_curve("circle", {{"r", 2.0}}, 128)));
    const bool equality_ok = std::fabs(circle.slack) <= 1e-10 * circle.rhs;
    report(7, "curvature bound",
           corpus_ok && snapshots_ok && equality_ok,
           fmt("corpus %zu curves ok=%d, %d snapshots ok=%d, circle equality ok=%d",
               corpus.size(), corpus_ok ? 1 : 0, snapshots, snapshots_ok ? 1 : 0,
               equality_ok ? 1 : 0));
}

// ---------------------------------------------------------------------------
// C8: rigidity identities on the corpus; Q constant precisely on numerically
// stationary snapshots.
void criterion_rigidity(const std::vector<GeometryCache>& corpus,
                        const FlowState& converged_state) {
    double worst_m = 0, worst_n = 0;
    for (const auto& g : corpus) {
        auto prof = rigidity_profile(g);
        std::vector<double> abs_m(prof.m.size());
        for (std::size_t j = 0; j < prof.m.size(); ++j) abs_m[j] = std::fabs(prof.m[j]);
        worst_m = std::max(worst_m, std::fabs(prof.integral_m) /
                                        std::max(g.integrate(abs_m), 1e-300));
        worst_n = std::max(worst_n, std::fabs(prof.integral_n + 3.0 * g.energy) /
                                        (3.0 * g.energy));
    }

    const auto& g = converged_state.cache;
    const bool stationary =
        std::pow(g.length, 9) * el_operator(g).l2_norm_sq < kStationarityFloor;
    auto prof = rigidity_profile(g);
    const bool q_const = prof.max_deviation < 1e-6 * std::fabs(prof.mean_q) + 1e-12;

    auto ge = build_geometry(preset_curve("ellipse", {{"a", 1.5}, {"b", 1.0}}, 256));
    auto prof_moving = rigidity_profile(ge);
    const bool q_varies =
        prof_moving.max_deviation > 1e-6 * std::fabs(prof_moving.mean_q) + 1e-12;

    report(8, "rigidity diagnostics",
           worst_m < 1e-8 && worst_n < 1e-8 && stationary && q_const && q_varies,
           fmt("int M rel %.1e, int N rel %.1e (<=1e-8); Q const at stationarity=%d, "
               "varies off it=%d",
               worst_m, worst_n, (stationary && q_const) ? 1 : 0, q_varies ? 1 : 0));
}

// ---------------------------------------------------------------------------
// C9: lemniscate negative control: completes without convergence, winding 0
// throughout, L^3 E bounded away from zero, no blow-up of Q over the horizon.
void criterion_lemniscate() {
    FlowConfig config;
    config.dt_initial = 1e-9;
    config.dt_max = 1e-6;
    config.t_end = 2e-4;
    int winding_zero = 0, snapshots = 0;
    auto result = run(preset_curve("lemniscate", {{"a", 1.0}}, 256), config,
                      [&](const FlowState& s, const DiagnosticsRecord&) {
                          ++snapshots;
                          if (s.cache.winding == 0) ++winding_zero;
                      });
    double min_l3e = 1e300, max_q = 0;
    bool finite = true;
    for (const auto& r : result.records) {
        min_l3e = std::min(min_l3e, r.scale_energy);
        max_q = std::max(max_q, r.q_blowup);
        finite = finite && std::isfinite(r.q_blowup) && std::isfinite(r.energy);
    }
    const bool ok = result.reason == StopReason::t_end && winding_zero == snapshots &&
                    min_l3e > 1.0 && finite;
    report(9, "lemniscate negative control", ok,
           fmt("%s, winding 0 on %d/%d snapshots, min L3E %.4g (margin > 1), max Q %.4g, "
               "finite=%d",
               to_string(result.reason), winding_zero, snapshots, min_l3e, max_q,
               finite ? 1 : 0));
}

// ---------------------------------------------------------------------------
// C10: checkpoint round-trip bit-exact; CSV/manifest determinism across
// repeated identical CLI runs; RK4 vs IMEX agreement to 1e-6 sup-norm.
void criterion_infrastructure() {
    bool roundtrip_ok = true;
    {
        FlowConfig config;
        config.dt_initial = 1e-7;
        config.dt_max = 1e-4;
        config.t_end = 1e-3;
        auto result = run(preset_curve("fourier_perturbed_circle",
                                       {{"m", 3.0}, {"eps", 0.02}}, 128),
                          config);
        auto loaded = checkpoint_load(checkpoint_save(result.final_state));
        roundtrip_ok = loaded.time == result.final_state.time &&
                       loaded.last_dt == result.final_state.last_dt &&
                       loaded.dissipation == result.final_state.dissipation;
        for (int j = 0; j < loaded.curve.n(); ++j)
            roundtrip_ok = roundtrip_ok &&
                           loaded.curve.points[j].x == result.final_state.curve.points[j].x &&
                           loaded.curve.points[j].y == result.final_state.curve.points[j].y;
    }

    bool determinism_ok = true;
    {
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::stringstream buf;
            buf << in.rdbuf();
            return buf.str();
        };
        const fs::path base = fs::temp_directory_path() / "icf_acceptance_det";
        fs::remove_all(base);
        for (const char* sub : {"a", "b"}) {
            const std::string cmd =
                std::string("SOURCE_DATE_EPOCH=1700000000 ") + ICF_CLI_PATH +
                " simulate --preset fourier_perturbed_circle:m=2,eps=0.02,n=128" +
                " --t-end 1e-3 --dt-max 1e-4 --out-dir " + (base / sub).string() +
                " > /dev/null 2>&1";
            determinism_ok = determinism_ok && std::system(cmd.c_str()) == 0;
        }
        determinism_ok = determinism_ok &&
                         slurp(base / "a" / "diagnostics.csv") ==
                             slurp(base / "b" / "diagnostics.csv") &&
                         slurp(base / "a" / "manifest.json") ==
                             slurp(base / "b" / "manifest.json");
    }

    double scheme_diff = 0;
    {
        auto initial = preset_curve("ellipse", {{"a", 1.1}, {"b", 1.0}}, 128);
        // 10 steps at the RK4 stability limit dt ~ 2.785 / (N/2 / vbar)^6.
        auto g0 = build_geometry(initial);
        const double vbar = g0.length / kTau;
        const double dt = 2.785 / std::pow(64.0 / vbar, 6);
        FlowConfig config;
        config.dt_initial = config.dt_min = config.dt_max = dt;
        config.t_end = 1.0;
        config.resample_every = 1 << 30; // compare the raw schemes
        auto imex = make_flow_state(initial, config);
        FlowConfig rk = config;
        rk.scheme = Scheme::explicit_rk4;
        auto rk4 = make_flow_state(initial, rk);
        for (int i = 0; i < 10; ++i) {
            (void)step(imex, config);
            (void)step(rk4, rk);
        }
        for (int j = 0; j < imex.curve.n(); ++j)
            scheme_diff = std::max(scheme_diff,
                                   norm(imex.curve.points[j] - rk4.curve.points[j]));
    }

    report(10, "infrastructure", roundtrip_ok && determinism_ok && scheme_diff < 1e-6,
           fmt("checkpoint bit-exact=%d, reruns byte-identical=%d, RK4-IMEX sup diff "
               "%.2e (<1e-6)",
               roundtrip_ok ? 1 : 0, determinism_ok ? 1 : 0, scheme_diff));
}

} // namespace

int main() {
    std::printf("ideal curve flow acceptance suite (N <= 512, seeded corpora)\n");

    criterion_gradient_identity();
    criterion_equilibrium_exactness();
    criterion_energy_monotonicity();

    const auto t0 = std::chrono::steady_clock::now();
    auto run_005 = perturbed_run(0.05);
    const double secs_005 = wall_seconds(t0);
    criterion_convergence_to_round(run_005, secs_005);

    auto run_002 = perturbed_run(0.02);
    criterion_scale_invariant_monotonicity(run_002);

    // 50-curve corpus: 25 each with winding 1 and 2.
    std::vector<GeometryCache> corpus;
    {
        std::mt19937_64 rng(777);
        CorpusParams params;
        for (int i = 0; i < 50; ++i) {
            params.winding = 1 + (i % 2);
            corpus.push_back(build_geometry(random_perturbed_circle(rng, params)));
        }
    }
    criterion_mode_gap(corpus);
    criterion_curvature_bound(corpus, {&run_005, &run_002});
    criterion_rigidity(corpus, run_005.final_state);
    criterion_lemniscate();
    criterion_infrastructure();

    std::printf("%d/10 criteria passed\n", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}

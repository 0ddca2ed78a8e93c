// icf — simulate the ideal curve flow, verify its structural inequalities,
// and emit preset curves.
//
// Exit codes: 0 success (simulate: converged or t_end), 1 bad arguments,
// 2 step floor reached, 3 immersion lost, 4 verification failure.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "icf/checkpoint.hpp"
#include "icf/curve_io.hpp"
#include "icf/presets.hpp"
#include "icf/run_artifacts.hpp"
#include "icf/spectrum.hpp"
#include "icf/svg.hpp"
#include "icf/validators.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct SimulateOptions {
    std::string preset;
    std::string input;
    std::string config_file;
    std::string out_dir = "out";
    std::string sweep_file;
    int frame_stride = 0; // snapshots per frame; 0 disables frames
    long seed = 0;
    // CLI overrides applied on top of the config file.
    std::optional<double> t_end, dt_initial, dt_max, energy_tol;
    std::optional<std::string> scheme;
};

icf::CurveState load_initial(const std::string& preset, const std::string& input,
                             std::string& description) {
    if (!preset.empty()) {
        auto [id, params] = icf::parse_preset_spec(preset);
        int n = 256;
        if (auto it = params.find("n"); it != params.end()) {
            n = static_cast<int>(it->second);
            params.erase(it);
        }
        description = preset;
        return icf::preset_curve(id, params, n);
    }
    description = input;
    return icf::read_curve_file(input);
}

icf::FlowConfig effective_config(const SimulateOptions& opt) {
    icf::FlowConfig config;
    if (!opt.config_file.empty()) {
        std::ifstream in(opt.config_file);
        if (!in) throw icf::Error("cannot open config " + opt.config_file);
        std::stringstream buf;
        buf << in.rdbuf();
        config = icf::flow_config_from_json(buf.str());
    }
    if (opt.t_end) config.t_end = *opt.t_end;
    if (opt.dt_initial) {
        config.dt_initial = *opt.dt_initial;
        config.dt_min = std::min(config.dt_min, config.dt_initial);
    }
    if (opt.dt_max) config.dt_max = std::max(*opt.dt_max, config.dt_initial);
    if (opt.energy_tol) config.energy_increase_tolerance = *opt.energy_tol;
    if (opt.scheme) {
        if (*opt.scheme == "imex_spectral")
            config.scheme = icf::Scheme::imex_spectral;
        else if (*opt.scheme == "explicit_rk4")
            config.scheme = icf::Scheme::explicit_rk4;
        else
            throw icf::BadParams("unknown scheme " + *opt.scheme);
    }
    config.validate();
    return config;
}

std::string run_echo_json(const icf::FlowConfig& config, const std::string& source,
                          long seed, int frame_stride) {
    ordered_json j;
    j["flow"] = ordered_json::parse(icf::flow_config_to_json(config));
    j["source"] = source;
    j["seed"] = seed;
    j["frame_stride"] = frame_stride;
    return j.dump(2);
}

int simulate_single(const SimulateOptions& opt, bool quiet = false) {
    std::string source;
    auto initial = load_initial(opt.preset, opt.input, source);
    auto config = effective_config(opt);

    const fs::path dir = opt.out_dir;
    fs::create_directories(dir);
    if (opt.frame_stride > 0) fs::create_directories(dir / "frames");

    icf::RunManifest manifest;
    manifest.config_json = run_echo_json(config, source, opt.seed, opt.frame_stride);
    manifest.start_walltime_unix = icf::manifest_walltime();

    std::vector<std::string> frame_files;
    int snapshot_index = 0;
    auto observer = [&](const icf::FlowState& state, const icf::DiagnosticsRecord& rec) {
        if (opt.frame_stride > 0 && snapshot_index % opt.frame_stride == 0) {
            char name[40];
            std::snprintf(name, sizeof name, "frames/frame_%06d.svg",
                          snapshot_index / opt.frame_stride);
            icf::SvgStyle style;
            style.time = rec.t;
            std::ofstream out(dir / name, std::ios::binary);
            out << icf::emit_svg_frame(state.curve, style);
            frame_files.push_back(name);
        }
        ++snapshot_index;
    };

    auto result = icf::run(initial, config, observer);

    {
        std::ofstream out(dir / "diagnostics.csv", std::ios::binary);
        out << icf::diagnostics_to_csv(result.records);
    }
    icf::checkpoint_write_file(dir / "final.checkpoint", result.final_state);
    icf::write_curve_file(dir / "curve_final.json", result.final_state.curve);

    manifest.end_walltime_unix = icf::manifest_walltime();
    manifest.termination_reason = icf::to_string(result.reason);
    std::vector<std::string> files = {"diagnostics.csv", "final.checkpoint",
                                      "curve_final.json"};
    files.insert(files.end(), frame_files.begin(), frame_files.end());
    for (const auto& f : files)
        manifest.outputs.push_back({f, static_cast<std::uint64_t>(fs::file_size(dir / f)),
                                    icf::crc32_of_file(dir / f)});
    {
        std::ofstream out(dir / "manifest.json", std::ios::binary);
        out << icf::manifest_to_json(manifest);
    }

    if (!quiet) {
        const auto& last = result.records.back();
        std::cout << "run " << source << ": " << icf::to_string(result.reason)
                  << " at t=" << last.t << "  E=" << last.energy
                  << "  L=" << last.length << "  steps=" << result.final_state.step_count
                  << '\n';
        if (!result.error_detail.empty())
            std::cout << "  detail: " << result.error_detail << '\n';
    }

    switch (result.reason) {
    case icf::StopReason::converged:
    case icf::StopReason::t_end: return 0;
    case icf::StopReason::step_floor: return 2;
    case icf::StopReason::immersion_lost: return 3;
    }
    return 0;
}

int simulate_sweep(const SimulateOptions& opt) {
    std::ifstream in(opt.sweep_file);
    if (!in) throw icf::Error("cannot open sweep file " + opt.sweep_file);
    nlohmann::json sweep = nlohmann::json::parse(in);
    if (!sweep.is_array()) throw icf::BadParams("sweep file must be a JSON array");

    struct Job {
        SimulateOptions opt;
        std::string name;
    };
    std::vector<Job> jobs;
    for (const auto& entry : sweep) {
        Job job;
        job.name = entry.at("name").get<std::string>();
        job.opt = opt;
        job.opt.sweep_file.clear();
        if (entry.contains("preset")) job.opt.preset = entry["preset"].get<std::string>();
        if (entry.contains("input")) job.opt.input = entry["input"].get<std::string>();
        job.opt.out_dir = (fs::path(opt.out_dir) / job.name).string();
        if (entry.contains("config")) {
            // Inline config object: write it through the normal parser.
            const auto tmp = fs::path(opt.out_dir) / (job.name + ".config.json");
            fs::create_directories(opt.out_dir);
            std::ofstream out(tmp);
            out << entry["config"].dump(2);
            out.close();
            job.opt.config_file = tmp.string();
        }
        jobs.push_back(std::move(job));
    }

    unsigned threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("ICF_THREADS"))
        threads = static_cast<unsigned>(std::max(1L, std::strtol(env, nullptr, 10)));
    threads = std::min<unsigned>(std::max(1u, threads),
                                 static_cast<unsigned>(jobs.size()));

    std::atomic<std::size_t> next{0};
    std::atomic<int> worst{0};
    std::mutex io_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            int code;
            std::string line;
            try {
                code = simulate_single(jobs[i].opt, /*quiet=*/true);
                line = jobs[i].name + ": exit " + std::to_string(code);
            } catch (const std::exception& e) {
                code = 1;
                line = jobs[i].name + ": error: " + e.what();
            }
            int cur = worst.load();
            while (code > cur && !worst.compare_exchange_weak(cur, code)) {
            }
            std::lock_guard lock(io_mutex);
            std::cout << line << '\n';
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return worst.load();
}

void print_report_line(const icf::InequalityReport& r) {
    std::printf("  %-34s %-18s lhs=%-13.6g rhs=%-13.6g slack=%-13.6g %s\n",
                r.id.c_str(), icf::to_string(r.status), r.lhs, r.rhs, r.slack,
                r.note.c_str());
}

struct VerifyOutput {
    std::vector<icf::InequalityReport> reports;
    std::vector<std::string> extra_json;
    bool any_fail = false;

    void add(const icf::InequalityReport& r, bool json_mode) {
        reports.push_back(r);
        any_fail = any_fail || r.status == icf::CheckStatus::fail;
        if (!json_mode) print_report_line(r);
    }
};

void verify_curve_checks(const icf::GeometryCache& cache, double threshold,
                         bool json_mode, VerifyOutput& out) {
    out.add(icf::check_curvature_bound(cache), json_mode);
    out.add(icf::check_gap_estimate(cache, threshold), json_mode);

    try {
        out.add(icf::check_stability_estimate(cache), json_mode);
    } catch (const icf::DegenerateDenominator&) {
        icf::InequalityReport r;
        r.id = "stability_estimate";
        r.status = icf::CheckStatus::degenerate;
        r.note = "stationary: ||K||_2 at floor";
        out.add(r, json_mode);
    }

    // Rigidity integral identities as a pass/fail row.
    {
        auto prof = icf::rigidity_profile(cache);
        icf::InequalityReport r;
        r.id = "rigidity_integrals";
        std::vector<double> abs_m(prof.m.size());
        for (std::size_t j = 0; j < prof.m.size(); ++j) abs_m[j] = std::fabs(prof.m[j]);
        const double scale_m = std::max(cache.integrate(abs_m), 1e-30);
        const double err_m = std::fabs(prof.integral_m) / scale_m;
        const double err_n = std::fabs(prof.integral_n + 3.0 * prof.energy) /
                             std::max(3.0 * prof.energy, 1e-30);
        r.lhs = err_m;
        r.rhs = err_n;
        r.slack = 1e-8 - std::max(err_m, err_n);
        r.note = "int M ds ~ 0, int N ds ~ -3E";
        const bool trivially_zero = prof.energy < 1e-20;
        r.status = (trivially_zero || r.slack >= 0) ? icf::CheckStatus::pass
                                                    : icf::CheckStatus::fail;
        out.add(r, json_mode);
    }

    if (cache.winding >= 1) {
        auto gap = icf::mode_gap_report(cache);
        icf::InequalityReport r;
        r.id = "mode_gap";
        r.lhs = gap.lhs;
        r.rhs = gap.rhs;
        r.slack = gap.slack;
        r.status = (gap.pass && gap.a_bound_pass) ? icf::CheckStatus::pass
                                                  : icf::CheckStatus::fail;
        r.note = "C_w=" + std::to_string(gap.c_omega_value);
        out.add(r, json_mode);
        out.extra_json.push_back(icf::mode_gap_to_json(gap));
    } else {
        icf::InequalityReport r;
        r.id = "mode_gap";
        r.status = icf::CheckStatus::informational;
        r.note = "winding < 1: lemma hypothesis not applicable";
        out.add(r, json_mode);
    }
}

int verify_main(const std::string& preset, const std::string& input,
                const std::string& run_dir, double threshold, bool json_mode) {
    VerifyOutput out;

    if (!run_dir.empty()) {
        const fs::path dir = run_dir;
        std::ifstream in(dir / "diagnostics.csv", std::ios::binary);
        if (!in) throw icf::Error("no diagnostics.csv under " + run_dir);
        std::stringstream buf;
        buf << in.rdbuf();
        const auto records = icf::diagnostics_from_csv(buf.str());
        if (!json_mode) std::cout << "run checks (" << records.size() << " snapshots):\n";
        out.add(icf::check_monotone_scale_invariant_energy(records, threshold), json_mode);
        out.add(icf::check_length_bounds(records, threshold), json_mode);

        // Decay fit over the trailing half of the samples still above the
        // rounding floor of E.
        {
            icf::InequalityReport r;
            r.id = "decay_fit";
            const double e0 = records.front().energy;
            double t_star = records.front().t;
            for (const auto& rec : records)
                if (rec.energy > 1e-20 * std::max(e0, 1e-300)) t_star = rec.t;
            try {
                auto fit = icf::fit_exponential_decay(records, t_star / 2, t_star);
                r.lhs = fit.rate;
                r.ratio = fit.residual;
                r.status = icf::CheckStatus::informational;
                r.note = "rate=" + icf::format_double(fit.rate) +
                         " residual=" + icf::format_double(fit.residual);
                out.extra_json.push_back(icf::decay_to_json(fit));
            } catch (const icf::Error& e) {
                r.status = icf::CheckStatus::informational;
                r.note = e.what();
            }
            out.add(r, json_mode);
        }

        if (fs::exists(dir / "final.checkpoint")) {
            auto state = icf::checkpoint_read_file(dir / "final.checkpoint");
            if (!json_mode) std::cout << "final state checks:\n";
            verify_curve_checks(state.cache, threshold, json_mode, out);
        }
    } else {
        std::string source;
        auto curve = load_initial(preset, input, source);
        auto cache = icf::build_geometry(curve);
        if (!json_mode) {
            std::cout << "curve " << source << ": N=" << cache.n()
                      << " L=" << cache.length << " E=" << cache.energy
                      << " winding=" << cache.winding << "\n";
        }
        verify_curve_checks(cache, threshold, json_mode, out);
    }

    if (json_mode) {
        std::cout << "[";
        bool first = true;
        for (const auto& r : out.reports) {
            std::cout << (first ? "\n  " : ",\n  ") << icf::inequality_to_json(r);
            first = false;
        }
        for (const auto& j : out.extra_json) std::cout << ",\n  " << j;
        std::cout << "\n]\n";
    }
    return out.any_fail ? 4 : 0;
}

int presets_main(const std::string& emit, const std::string& out_file, bool json_mode) {
    if (emit.empty()) {
        if (json_mode) {
            ordered_json list = ordered_json::array();
            for (const auto& p : icf::preset_catalogue()) {
                ordered_json params = ordered_json::array();
                for (const auto& q : p.params)
                    params.push_back({{"name", q.name},
                                      {"default", q.default_value},
                                      {"description", q.description}});
                list.push_back(
                    {{"id", p.id}, {"description", p.description}, {"params", params}});
            }
            std::cout << list.dump(2) << '\n';
        } else {
            for (const auto& p : icf::preset_catalogue()) {
                std::cout << p.id << " — " << p.description << '\n';
                for (const auto& q : p.params)
                    std::cout << "    " << q.name << " (default " << q.default_value
                              << "): " << q.description << '\n';
            }
        }
        return 0;
    }

    auto [id, params] = icf::parse_preset_spec(emit);
    int n = 256;
    if (auto it = params.find("n"); it != params.end()) {
        n = static_cast<int>(it->second);
        params.erase(it);
    }
    auto curve = icf::preset_curve(id, params, n);
    if (out_file.empty()) {
        std::cout << icf::curve_to_json(curve);
    } else {
        icf::write_curve_file(out_file, curve);
        std::cout << "wrote " << out_file << " (" << curve.n() << " points)\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ideal curve flow: simulate, verify, presets"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "advance the flow and emit artifacts");
    simulate->add_option("--preset", sim.preset, "preset spec, e.g. circle:r=1,n=128");
    simulate->add_option("--input", sim.input, "initial curve file (.json/.csv)");
    simulate->add_option("--config", sim.config_file, "flow config JSON");
    simulate->add_option("--out-dir", sim.out_dir, "output directory");
    simulate->add_option("--sweep", sim.sweep_file, "JSON array of named runs");
    simulate->add_option("--frame-stride", sim.frame_stride,
                         "emit an SVG frame every K snapshots (0 = off)");
    simulate->add_option("--seed", sim.seed, "seed recorded in the manifest");
    double t_end_v, dt_init_v, dt_max_v, etol_v;
    std::string scheme_v;
    auto* o1 = simulate->add_option("--t-end", t_end_v, "override t_end");
    auto* o2 = simulate->add_option("--dt-init", dt_init_v, "override dt_initial");
    auto* o3 = simulate->add_option("--dt-max", dt_max_v, "override dt_max");
    auto* o4 = simulate->add_option("--energy-tol", etol_v,
                                    "override energy_increase_tolerance");
    auto* o5 = simulate->add_option("--scheme", scheme_v,
                                    "imex_spectral | explicit_rk4");

    std::string v_preset, v_input, v_run;
    double v_threshold = 50.0;
    bool v_json = false;
    auto* verify = app.add_subcommand("verify", "run inequality checks");
    verify->add_option("--preset", v_preset, "preset spec");
    verify->add_option("--input", v_input, "curve file");
    verify->add_option("--run", v_run, "completed run directory");
    verify->add_option("--l3e-threshold", v_threshold,
                       "small-energy hypothesis threshold on L^3 E");
    verify->add_flag("--json", v_json, "machine-readable reports");

    std::string p_emit, p_out;
    bool p_json = false;
    auto* presets = app.add_subcommand("presets", "list or emit preset curves");
    presets->add_option("--emit", p_emit, "preset spec to sample");
    presets->add_option("-o,--output", p_out, "output file (.json/.csv)");
    presets->add_flag("--json", p_json, "machine-readable listing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        if (simulate->parsed()) {
            if (o1->count()) sim.t_end = t_end_v;
            if (o2->count()) sim.dt_initial = dt_init_v;
            if (o3->count()) sim.dt_max = dt_max_v;
            if (o4->count()) sim.energy_tol = etol_v;
            if (o5->count()) sim.scheme = scheme_v;
            if (!sim.sweep_file.empty()) return simulate_sweep(sim);
            if (sim.preset.empty() == sim.input.empty()) {
                std::cerr << "simulate needs exactly one of --preset / --input\n";
                return 1;
            }
            return simulate_single(sim);
        }
        if (verify->parsed()) {
            const int sources = (!v_preset.empty()) + (!v_input.empty()) + (!v_run.empty());
            if (sources != 1) {
                std::cerr << "verify needs exactly one of --preset / --input / --run\n";
                return 1;
            }
            return verify_main(v_preset, v_input, v_run, v_threshold, v_json);
        }
        if (presets->parsed()) return presets_main(p_emit, p_out, p_json);
    } catch (const icf::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

#include "icf/run_artifacts.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <zlib.h>

#include "icf/curve_io.hpp"

namespace icf {

std::string diagnostics_to_csv(std::span<const DiagnosticsRecord> records) {
    std::ostringstream out;
    out << kDiagnosticsHeader << '\n';
    for (const auto& r : records) {
        out << format_double(r.t) << ',' << format_double(r.length) << ','
            << format_double(r.energy) << ',' << format_double(r.scale_energy) << ','
            << format_double(r.k_l2sq) << ',' << format_double(r.k_sup) << ','
            << format_double(r.q_blowup) << ',' << format_double(r.circle_residual)
            << ',' << format_double(r.min_speed) << '\n';
    }
    return out.str();
}

std::vector<DiagnosticsRecord> diagnostics_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kDiagnosticsHeader)
        throw BadParams("diagnostics CSV header mismatch");
    std::vector<DiagnosticsRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        double v[9];
        for (int i = 0; i < 9; ++i) {
            if (!std::getline(row, cell, ','))
                throw BadParams("diagnostics CSV row with fewer than 9 columns");
            v[i] = std::stod(cell);
        }
        records.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
    }
    return records;
}

std::string flow_config_to_json(const FlowConfig& c) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["dt_initial"] = c.dt_initial;
    j["dt_min"] = c.dt_min;
    j["dt_max"] = c.dt_max;
    j["scheme"] = c.scheme == Scheme::imex_spectral ? "imex_spectral" : "explicit_rk4";
    j["energy_increase_tolerance"] = c.energy_increase_tolerance;
    j["resample_every"] = c.resample_every;
    j["t_end"] = c.t_end;
    j["snapshot_stride"] = c.snapshot_stride;
    j["small_energy_threshold"] = c.small_energy_threshold;
    j["dt_growth"] = c.dt_growth;
    j["tol_conv"] = c.tol_conv;
    j["tol_circ"] = c.tol_circ;
    j["convergence_snapshots"] = c.convergence_snapshots;
    return j.dump(2);
}

FlowConfig flow_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw BadParams(std::string("config JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw BadParams("config must be a JSON object");
    FlowConfig c;
    try {
        if (j.contains("dt_initial")) c.dt_initial = j["dt_initial"].get<double>();
        if (j.contains("dt_min")) c.dt_min = j["dt_min"].get<double>();
        if (j.contains("dt_max")) c.dt_max = j["dt_max"].get<double>();
        if (j.contains("scheme")) {
            const auto s = j["scheme"].get<std::string>();
            if (s == "imex_spectral")
                c.scheme = Scheme::imex_spectral;
            else if (s == "explicit_rk4")
                c.scheme = Scheme::explicit_rk4;
            else
                throw BadParams("unknown scheme: " + s);
        }
        if (j.contains("energy_increase_tolerance"))
            c.energy_increase_tolerance = j["energy_increase_tolerance"].get<double>();
        if (j.contains("resample_every")) c.resample_every = j["resample_every"].get<int>();
        if (j.contains("t_end")) c.t_end = j["t_end"].get<double>();
        if (j.contains("snapshot_stride"))
            c.snapshot_stride = j["snapshot_stride"].get<int>();
        if (j.contains("small_energy_threshold"))
            c.small_energy_threshold = j["small_energy_threshold"].get<double>();
        if (j.contains("dt_growth")) c.dt_growth = j["dt_growth"].get<double>();
        if (j.contains("tol_conv")) c.tol_conv = j["tol_conv"].get<double>();
        if (j.contains("tol_circ")) c.tol_circ = j["tol_circ"].get<double>();
        if (j.contains("convergence_snapshots"))
            c.convergence_snapshots = j["convergence_snapshots"].get<int>();
    } catch (const nlohmann::json::type_error& e) {
        throw BadParams(std::string("config JSON type error: ") + e.what());
    }
    c.validate();
    return c;
}

std::uint32_t crc32_of_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::uint32_t crc = static_cast<std::uint32_t>(::crc32(0L, nullptr, 0));
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        crc = static_cast<std::uint32_t>(::crc32(
            crc, reinterpret_cast<const Bytef*>(buf), static_cast<uInt>(in.gcount())));
    return crc;
}

std::string manifest_to_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["tool"] = "icf";
    j["version"] = kToolVersion;
    j["config"] = nlohmann::ordered_json::parse(m.config_json);
    j["termination_reason"] = m.termination_reason;
    j["start_walltime_unix"] = m.start_walltime_unix;
    j["end_walltime_unix"] = m.end_walltime_unix;
    auto outputs = nlohmann::ordered_json::array();
    for (const auto& e : m.outputs) {
        char crc_hex[16];
        std::snprintf(crc_hex, sizeof crc_hex, "%08x", e.crc32);
        outputs.push_back({{"path", e.path}, {"bytes", e.bytes}, {"crc32", crc_hex}});
    }
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

std::int64_t manifest_walltime() {
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH"))
        return std::strtoll(env, nullptr, 10);
    return static_cast<std::int64_t>(std::time(nullptr));
}

} // namespace icf

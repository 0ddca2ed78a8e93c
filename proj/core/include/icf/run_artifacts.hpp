#pragma once

// Run artifact emission: the diagnostics CSV (fixed header, 17-significant-
// digit floats, no timestamps) and the run manifest JSON listing every
// emitted file with its CRC32. Manifests are byte-deterministic for a given
// config and tool version; wall times honour SOURCE_DATE_EPOCH so that
// repeated runs can be compared bitwise.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "icf/flow.hpp"

namespace icf {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kDiagnosticsHeader =
    "t,L,E,L3E,K_l2sq,k_sup,Q_blowup,circle_residual,min_speed";

std::string diagnostics_to_csv(std::span<const DiagnosticsRecord> records);
std::vector<DiagnosticsRecord> diagnostics_from_csv(const std::string& text);

/// Versioned config schema (schema_version 1, additive-only evolution);
/// unknown keys are ignored on read.
std::string flow_config_to_json(const FlowConfig& config);
FlowConfig flow_config_from_json(const std::string& text);

std::uint32_t crc32_of_file(const std::filesystem::path& path);

struct ManifestEntry {
    std::string path; // relative to the run directory
    std::uint64_t bytes{};
    std::uint32_t crc32{};
};

struct RunManifest {
    std::string config_json;   // full effective config echo
    std::string termination_reason;
    std::int64_t start_walltime_unix{};
    std::int64_t end_walltime_unix{};
    std::vector<ManifestEntry> outputs;
};

std::string manifest_to_json(const RunManifest& manifest);

/// Unix time, overridden by SOURCE_DATE_EPOCH when set.
std::int64_t manifest_walltime();

} // namespace icf

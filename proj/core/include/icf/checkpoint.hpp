#pragma once

// Versioned binary flow checkpoints:
//   "ICFL" | u32 version | u32 N | f64 payload (points row-major, t, dt, D)
//   | u32 CRC32 of everything before it
// all little-endian. Round-trips are bit-exact.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "icf/flow.hpp"

namespace icf {

std::vector<std::uint8_t> checkpoint_save(const FlowState& state);

/// Throws CorruptCheckpoint (truncation, bad magic, version or CRC mismatch).
FlowState checkpoint_load(const std::vector<std::uint8_t>& bytes);

void checkpoint_write_file(const std::filesystem::path& path, const FlowState& state);
FlowState checkpoint_read_file(const std::filesystem::path& path);

} // namespace icf

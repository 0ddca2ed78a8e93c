#pragma once

// Curve exchange formats: JSON {"n": N, "points": [[x, y], ...]} and a
// two-column CSV with header "x,y". Floats are written with 17 significant
// digits so round-trips are bit-exact.

#include <filesystem>
#include <string>

#include "icf/curve.hpp"

namespace icf {

std::string curve_to_json(const CurveState& curve);
CurveState curve_from_json(const std::string& json_text);

std::string curve_to_csv(const CurveState& curve);
CurveState curve_from_csv(const std::string& csv_text);

/// Dispatch on extension (.json / .csv).
void write_curve_file(const std::filesystem::path& path, const CurveState& curve);
CurveState read_curve_file(const std::filesystem::path& path);

/// printf("%.17g") — the fixed float format used by every text artifact.
std::string format_double(double v);

} // namespace icf

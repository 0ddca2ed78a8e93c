#pragma once

// Built-in analytic curve families used for tests, verification corpora and
// the CLI. Every preset samples a closed analytic curve; immersion is
// checked at construction and parameter combinations that break it are
// rejected as BadParams.

#include <map>
#include <string>
#include <vector>

#include "icf/curve.hpp"

namespace icf {

using ParamMap = std::map<std::string, double>;

struct PresetParamInfo {
    std::string name;
    double default_value;
    std::string description;
};

struct PresetInfo {
    std::string id;
    std::string description;
    std::vector<PresetParamInfo> params;
};

/// Catalogue of the available presets, stable order.
const std::vector<PresetInfo>& preset_catalogue();

/// Sample preset `name` with `params` on n uniform parameter values.
/// Throws UnknownPreset, BadParams (bad values, unknown keys, or a
/// combination that is not immersed).
CurveState preset_curve(const std::string& name, const ParamMap& params, int n);

/// Parse "circle:r=1,n=128" into (id, params); bare "circle" is allowed.
std::pair<std::string, ParamMap> parse_preset_spec(const std::string& spec);

} // namespace icf

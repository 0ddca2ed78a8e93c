#include "icf/presets.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace icf {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

double get(const ParamMap& params, const PresetInfo& info, const std::string& key) {
    if (auto it = params.find(key); it != params.end()) return it->second;
    for (const auto& p : info.params)
        if (p.name == key) return p.default_value;
    throw BadParams("preset parameter without default: " + key);
}

void reject_unknown(const ParamMap& params, const PresetInfo& info) {
    for (const auto& [key, value] : params) {
        (void)value;
        bool known = false;
        for (const auto& p : info.params) known = known || p.name == key;
        if (!known)
            throw BadParams("unknown parameter '" + key + "' for preset " + info.id);
    }
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw BadParams(msg);
}

int int_param(double v, const std::string& name) {
    const double r = std::round(v);
    require(std::fabs(v - r) < 1e-9, name + " must be an integer");
    return static_cast<int>(r);
}

CurveState sample(int n, const std::function<Vec2(double)>& gamma) {
    CurveState c;
    c.points.resize(n);
    for (int j = 0; j < n; ++j) c.points[j] = gamma(kTau * j / n);
    return c;
}

} // namespace

const std::vector<PresetInfo>& preset_catalogue() {
    static const std::vector<PresetInfo> cat = {
        {"circle", "round circle of radius r", {{"r", 1.0, "radius"}}},
        {"omega_circle",
         "circle of radius r traversed omega times",
         {{"r", 1.0, "radius"}, {"omega", 2.0, "winding number (integer >= 1)"}}},
        {"ellipse",
         "axis-aligned ellipse with semi-axes a, b",
         {{"a", 1.2, "semi-axis (x)"}, {"b", 1.0, "semi-axis (y)"}}},
        {"limacon",
         "limacon r(theta) = b + a cos(theta); inner loop (winding 2) for b < a",
         {{"a", 1.0, "cosine amplitude"}, {"b", 0.5, "base radius"}}},
        {"lemniscate",
         "Bernoulli lemniscate (figure-eight, winding 0) of scale a",
         {{"a", 1.0, "scale"}}},
        {"fourier_perturbed_circle",
         "radius r perturbed radially by eps*cos(m theta [+ phase]); optional "
         "multiplicity omega",
         {{"r", 1.0, "base radius"},
          {"m", 3.0, "perturbation mode (integer >= 1)"},
          {"eps", 0.05, "perturbation amplitude"},
          {"omega", 1.0, "winding number (integer >= 1)"},
          {"phase", 0.0, "perturbation phase"}}},
    };
    return cat;
}

CurveState preset_curve(const std::string& name, const ParamMap& params, int n) {
    const PresetInfo* info = nullptr;
    for (const auto& p : preset_catalogue())
        if (p.id == name) info = &p;
    if (!info) throw UnknownPreset("unknown preset: " + name);
    reject_unknown(params, *info);
    require(n >= 16, "n must be at least 16");

    CurveState curve;
    if (name == "circle") {
        const double r = get(params, *info, "r");
        require(r > 0, "circle radius must be positive");
        curve = sample(n, [&](double u) {
            return Vec2{r * std::cos(u), r * std::sin(u)};
        });
    } else if (name == "omega_circle") {
        const double r = get(params, *info, "r");
        const int w = int_param(get(params, *info, "omega"), "omega");
        require(r > 0, "radius must be positive");
        require(w >= 1, "omega must be >= 1");
        curve = sample(n, [&](double u) {
            return Vec2{r * std::cos(w * u), r * std::sin(w * u)};
        });
    } else if (name == "ellipse") {
        const double a = get(params, *info, "a");
        const double b = get(params, *info, "b");
        require(a > 0 && b > 0, "semi-axes must be positive");
        curve = sample(n, [&](double u) {
            return Vec2{a * std::cos(u), b * std::sin(u)};
        });
    } else if (name == "limacon") {
        const double a = get(params, *info, "a");
        const double b = get(params, *info, "b");
        require(a > 0 && b >= 0, "limacon needs a > 0, b >= 0");
        curve = sample(n, [&](double u) {
            const double rad = b + a * std::cos(u);
            return Vec2{rad * std::cos(u), rad * std::sin(u)};
        });
    } else if (name == "lemniscate") {
        const double a = get(params, *info, "a");
        require(a > 0, "scale must be positive");
        curve = sample(n, [&](double u) {
            const double den = 1.0 + std::sin(u) * std::sin(u);
            return Vec2{a * std::cos(u) / den,
                        a * std::sin(u) * std::cos(u) / den};
        });
    } else { // fourier_perturbed_circle
        const double r = get(params, *info, "r");
        const int m = int_param(get(params, *info, "m"), "m");
        const double eps = get(params, *info, "eps");
        const int w = int_param(get(params, *info, "omega"), "omega");
        const double phase = get(params, *info, "phase");
        require(r > 0, "radius must be positive");
        require(m >= 1, "mode must be >= 1");
        require(w >= 1, "omega must be >= 1");
        curve = sample(n, [&](double u) {
            const double rad = r + eps * std::cos(m * u + phase);
            return Vec2{rad * std::cos(w * u), rad * std::sin(w * u)};
        });
    }

    try {
        (void)build_geometry(curve);
    } catch (const NotImmersed&) {
        throw BadParams("preset " + name + " is not immersed with these parameters");
    }
    return curve;
}

std::pair<std::string, ParamMap> parse_preset_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    std::string id = spec.substr(0, colon);
    ParamMap params;
    if (colon == std::string::npos) return {id, params};
    std::stringstream rest(spec.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw BadParams("expected key=value in preset spec, got '" + item + "'");
        try {
            std::size_t used = 0;
            const double v = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1)
                throw BadParams("bad numeric value in '" + item + "'");
            params[item.substr(0, eq)] = v;
        } catch (const std::invalid_argument&) {
            throw BadParams("bad numeric value in '" + item + "'");
        } catch (const std::out_of_range&) {
            throw BadParams("numeric value out of range in '" + item + "'");
        }
    }
    return {id, params};
}

} // namespace icf

#include "icf/curve_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace icf {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string curve_to_json(const CurveState& curve) {
    std::ostringstream out;
    out << "{\n  \"n\": " << curve.n() << ",\n  \"points\": [";
    for (int j = 0; j < curve.n(); ++j) {
        out << (j ? ", " : "") << '[' << format_double(curve.points[j].x) << ", "
            << format_double(curve.points[j].y) << ']';
    }
    out << "]\n}\n";
    return out.str();
}

CurveState curve_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw BadParams(std::string("curve JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw BadParams("curve JSON must be an object with a 'points' array");
    CurveState c;
    for (const auto& p : j["points"]) {
        if (!p.is_array() || p.size() != 2)
            throw BadParams("curve JSON points must be [x, y] pairs");
        c.points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    if (j.contains("n") && j["n"].get<int>() != c.n())
        throw BadParams("curve JSON 'n' does not match the number of points");
    return c;
}

std::string curve_to_csv(const CurveState& curve) {
    std::ostringstream out;
    out << "x,y\n";
    for (const auto& p : curve.points)
        out << format_double(p.x) << ',' << format_double(p.y) << '\n';
    return out.str();
}

CurveState curve_from_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line) || line.find('x') == std::string::npos)
        throw BadParams("curve CSV must start with an 'x,y' header");
    CurveState c;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw BadParams("curve CSV line " + std::to_string(lineno) +
                            " has no comma");
        try {
            c.points.push_back({std::stod(line.substr(0, comma)),
                                std::stod(line.substr(comma + 1))});
        } catch (const std::exception&) {
            throw BadParams("curve CSV line " + std::to_string(lineno) +
                            " is not numeric");
        }
    }
    return c;
}

void write_curve_file(const std::filesystem::path& path, const CurveState& curve) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << (path.extension() == ".csv" ? curve_to_csv(curve) : curve_to_json(curve));
}

CurveState read_curve_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return path.extension() == ".csv" ? curve_from_csv(buf.str())
                                      : curve_from_json(buf.str());
}

} // namespace icf

#include "icf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "icf/curve_io.hpp"

namespace icf {

namespace {

// Blue-white-red diverging map on k / max|k|.
std::string curvature_color(double k, double kmax) {
    const double t = kmax > 0 ? std::clamp(k / kmax, -1.0, 1.0) : 0.0;
    const auto ch = [](double v) {
        return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255));
    };
    const double r = t > 0 ? 1.0 : 1.0 + t;
    const double b = t < 0 ? 1.0 : 1.0 - t;
    const double g = 1.0 - std::fabs(t);
    std::ostringstream out;
    out << "rgb(" << ch(r) << ',' << ch(g) << ',' << ch(b) << ')';
    return out.str();
}

} // namespace

std::string emit_svg_frame(const CurveState& curve, const SvgStyle& style) {
    if (curve.n() < 3) throw BadParams("svg frame needs at least 3 points");
    double xmin = curve.points[0].x, xmax = xmin;
    double ymin = curve.points[0].y, ymax = ymin;
    for (const auto& p : curve.points) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double pad = 0.1 * std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double w = (xmax - xmin) + 2 * pad;
    const double h = (ymax - ymin) + 2 * pad;
    const double sw = style.stroke_width_rel * std::max(w, h);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
        << format_double(xmin - pad) << ' ' << format_double(-(ymax + pad)) << ' '
        << format_double(w) << ' ' << format_double(h) << '"';
    if (style.time) out << " data-time=\"" << format_double(*style.time) << '"';
    out << ">\n";
    // Flip y so the mathematical orientation matches the screen.
    out << "<g transform=\"scale(1,-1)\">\n";

    auto point = [&](int j) {
        const auto& p = curve.points[j];
        return format_double(p.x) + " " + format_double(p.y);
    };

    if (style.color_by_curvature) {
        auto cache = build_geometry(curve);
        const double kmax = cache.sup_abs_k();
        for (int j = 0; j < curve.n(); ++j) {
            const int jn = (j + 1) % curve.n();
            out << "<path d=\"M " << point(j) << " L " << point(jn)
                << "\" stroke=\"" << curvature_color(cache.k()[j], kmax)
                << "\" stroke-width=\"" << format_double(sw)
                << "\" fill=\"none\"/>\n";
        }
    } else {
        out << "<path d=\"M " << point(0);
        for (int j = 1; j < curve.n(); ++j) out << " L " << point(j);
        out << " Z\" stroke=\"" << style.stroke << "\" stroke-width=\""
            << format_double(sw) << "\" fill=\"none\"/>\n";
    }

    if (style.show_normals) {
        auto cache = build_geometry(curve);
        const double glyph = 0.35 * pad;
        const int stride = std::max(1, curve.n() / 64);
        for (int j = 0; j < curve.n(); j += stride) {
            const auto p = curve.points[j];
            const auto q = p + glyph * cache.normal[j];
            out << "<line x1=\"" << format_double(p.x) << "\" y1=\""
                << format_double(p.y) << "\" x2=\"" << format_double(q.x)
                << "\" y2=\"" << format_double(q.y)
                << "\" stroke=\"#999999\" stroke-width=\""
                << format_double(0.5 * sw) << "\"/>\n";
        }
    }

    out << "</g>\n</svg>\n";
    return out.str();
}

} // namespace icf

#pragma once

// SVG rendering of curve frames: one closed path through the samples,
// viewBox padded 10% around the bounding box, optional normal glyphs and a
// curvature colour map. Frames carry their flow time as metadata.

#include <optional>
#include <string>

#include "icf/curve.hpp"

namespace icf {

struct SvgStyle {
    std::string stroke = "#1f4e79";
    double stroke_width_rel = 0.004; // relative to the larger bbox side
    bool show_normals = false;
    bool color_by_curvature = false;
    std::optional<double> time; // embedded as data-time on the root element
};

std::string emit_svg_frame(const CurveState& curve, const SvgStyle& style = {});

} // namespace icf

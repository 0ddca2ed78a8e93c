#pragma once

// Algebraic least-squares circle fit (Kasa): minimise
// sum (|p_i - c|^2 - r^2)^2, which is linear in (c, r^2 - |c|^2).

#include "icf/curve.hpp"

namespace icf {

struct CircleFit {
    Vec2 center{};
    double radius{};
    double residual{}; // rms(|p_i - c| - r) / r
};

/// Throws DegenerateFit on (near-)collinear input, BadParams for N < 16.
CircleFit fit_circle(const CurveState& curve);

} // namespace icf

#pragma once

// Closed immersed planar curves and their intrinsic geometry. Curves are
// N uniform samples gamma(u_i), u_i = 2*pi*i/N, of a smooth closed curve;
// all derived quantities come from the trigonometric interpolant, so they
// converge spectrally for analytic curves.

#include <array>
#include <span>
#include <vector>

#include "icf/errors.hpp"

namespace icf {

struct Vec2 {
    double x{};
    double y{};

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
};

double norm(Vec2 a);

/// Samples of a closed curve, uniform in the parameter u. Periodic indexing;
/// immersion is validated when geometry is built.
struct CurveState {
    std::vector<Vec2> points;

    int n() const { return static_cast<int>(points.size()); }
};

/// Everything intrinsic about one curve: frame, speed, curvature and its
/// first five arc-length derivatives, length, winding and bending-gradient
/// energy E = 1/2 int k_s^2 ds. Immutable after construction.
struct GeometryCache {
    CurveState curve;
    std::vector<Vec2> tangent;
    std::vector<Vec2> normal;
    std::vector<double> speed;
    std::array<std::vector<double>, 6> k_deriv; // [l] = d^l k / ds^l

    double length{};
    double energy{};
    double total_curvature{}; // int k ds
    int winding{};            // round(total_curvature / 2 pi)
    double winding_residual{};

    int n() const { return curve.n(); }
    const std::vector<double>& k() const { return k_deriv[0]; }
    const std::vector<double>& k_s() const { return k_deriv[1]; }
    const std::vector<double>& k_ss() const { return k_deriv[2]; }
    const std::vector<double>& k_s3() const { return k_deriv[3]; }
    const std::vector<double>& k_s4() const { return k_deriv[4]; }
    const std::vector<double>& k_s5() const { return k_deriv[5]; }

    /// (2 pi / N) sum f_j v_j; spectrally exact quadrature of int f ds.
    double integrate(std::span<const double> f) const;

    double sup_abs_k() const;
    double min_speed() const;
    double mean_speed() const;

    /// Scale-invariant energy L^3 E. Note the factor-2 convention: the
    /// quantity L^3 ||k_s||_2^2 that sometimes appears equals 2 L^3 E.
    double scale_invariant_energy() const { return length * length * length * energy; }
};

/// Throws NotImmersed | NonFinite | BadParams (fewer than 16 samples).
GeometryCache build_geometry(const CurveState& curve);

/// Resample onto n_out points of the trigonometric interpolant, equally
/// spaced in arc length (Newton on the spectrally-integrated s(u); the
/// sample at index 0 is kept as the arc-length origin).
CurveState resample_uniform_arclength(const CurveState& curve, int n_out);

/// round(int k ds / 2 pi); AmbiguousWinding if the residual exceeds 1e-4.
int winding_number(const GeometryCache& cache);

/// Symmetric Hausdorff distance between two sample sets.
double discrete_hausdorff(const CurveState& a, const CurveState& b);

} // namespace icf

#pragma once

// Fourier analysis of curvature with respect to arc length, the linearised
// operator K0 = k_s4 + (2 pi w / L)^2 k_ss around the w-circle, and the
// mode-gap inequality
//
//   int K0^2 ds >= C_w P - 4^5 w^8 pi^8 L^{-3} E^2,   P = int k_s4^2 ds,
//
// together with its intermediate coefficient bound |a_{+-w}| <= 2 L^2 E.

#include <complex>
#include <string>
#include <vector>

#include "icf/curve.hpp"

namespace icf {

/// Coefficients of k(s) = sum_p a_p exp(i 2 pi p s / L), i.e.
/// a_p = (1/L) int k exp(-i 2 pi p s / L) ds, computed after resampling to
/// uniform arc length. Conjugate symmetry a_{-p} = conj(a_p) holds since k
/// is real, so only p >= 0 is stored.
struct SpectralDecomposition {
    std::vector<std::complex<double>> a; // index p = 0..p_max
    int p_max{};
    double length{};
    int winding{};

    /// a_p for signed p, |p| <= p_max.
    std::complex<double> coeff(int p) const;
};

/// Throws TruncationTooHigh (p_max > N/2 - 1) and propagates NotImmersed.
SpectralDecomposition decompose_curvature(const GeometryCache& cache, int p_max);

/// K0 = k_s4 + (2 pi w / L)^2 k_ss sampled on the curve.
std::vector<double> k0_operator(const GeometryCache& cache);

/// C_w = min over admissible modes p != 0, +-w of (1 - w^2/p^2)^2; the
/// minimum is attained at p = w -+ 1, and the (w-1) entry is dropped for
/// w = 1 where it is not an admissible mode. Throws BadWinding for w <= 0.
double c_omega(int winding);

struct ModeGapReport {
    int winding{};
    double lhs{};           // int K0^2 ds
    double p_quantity{};    // P = int k_s4^2 ds
    double c_omega_value{};
    double rhs{};           // C_w P - 4^5 w^8 pi^8 L^{-3} E^2
    double slack{};         // lhs - rhs
    double tolerance{};     // 1e-8 * max(1, C_w P)
    bool pass{};            // slack >= -tolerance
    double a_omega_abs{};   // |a_{+-w}|
    double a_omega_bound{}; // 2 L^2 E
    bool a_bound_pass{};
};

/// Evaluates the gap inequality on one curve. Throws BadWinding for w <= 0.
ModeGapReport mode_gap_report(const GeometryCache& cache);

std::string mode_gap_to_json(const ModeGapReport& report);

/// CSV rows "p,re_a,im_a" for p = -p_max..p_max.
std::string spectrum_to_csv(const SpectralDecomposition& dec);

} // namespace icf

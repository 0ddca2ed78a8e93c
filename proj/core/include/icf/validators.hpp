#pragma once

// Executable forms of the structural facts the flow is supposed to satisfy:
// the rigidity first integral Q(s), the curvature bound
// L ||k||_inf <= sqrt(L^3 ||k_s||_2^2) + 2 w pi, scale-invariant-energy
// monotonicity, length bands, exponential decay fits and circle detection.
// Non-explicit analytic constants are never asserted; those checks record
// scale-invariant ratios and compare against frozen regression values.

#include <random>
#include <span>
#include <string>
#include <vector>

#include "icf/circle_fit.hpp"
#include "icf/curve.hpp"
#include "icf/flow.hpp"

namespace icf {

/// Scale-invariant stationarity floor: a state with L^9 ||K||_2^2 below this
/// is treated as numerically stationary.
inline constexpr double kStationarityFloor = 1e-10;

/// Regression floor for the gap-estimate ratio L^9 int K^2 ds / (L^3 E),
/// frozen from the smallest-amplitude corpus member (observed ~4.6e6 for a
/// mode-2 perturbation family as the amplitude tends to zero).
inline constexpr double kGapRatioRegressionFloor = 1e6;

struct RigidityProfile {
    std::vector<double> q; // Q = k_s3^2 + k_ss^2 k^2 + 1/4 k_s^4 - k_ss k_s^2 k
    std::vector<double> m; // M = k_s3
    std::vector<double> n; // N = k_ss k - 1/2 k_s^2
    double mean_q{};       // (1/L) int Q ds
    double max_deviation{}; // max |Q - mean_q|
    double integral_m{};    // int M ds; vanishes for closed curves
    double integral_n{};    // int N ds; equals -3E
    double energy{};
};

RigidityProfile rigidity_profile(const GeometryCache& cache);

enum class CheckStatus {
    pass,
    fail,
    informational,      // evaluated outside its stated hypotheses
    hypothesis_not_met, // reported, not failed
    degenerate,
};
const char* to_string(CheckStatus status);

struct InequalityReport {
    std::string id;
    double lhs{};
    double rhs{};
    double slack{}; // amount by which the inequality holds; >= 0 when satisfied
    double ratio{}; // scale-invariant ratio, for the checks that record one
    /// Relative discrepancy of the scale-invariant form across rho in {1/2, 2}.
    double scale_consistency{};
    CheckStatus status{};
    std::string note;

    bool passed() const { return status != CheckStatus::fail; }
};

/// L ||k||_inf <= sqrt(L^3 ||k_s||_2^2) + 2 w pi. Equality on circles.
/// For winding 0 the check runs with |w| and is flagged informational.
InequalityReport check_curvature_bound(const GeometryCache& cache);

/// Records the scale-invariant ratio E / (L^{3/2} ||K||_2) and verifies its
/// invariance under rescaling. Throws DegenerateDenominator at stationarity.
InequalityReport check_stability_estimate(const GeometryCache& cache);

/// Records L^9 int K^2 ds / (L^3 E) under the hypothesis L^3 E < threshold;
/// passes when the ratio clears the frozen regression floor.
InequalityReport check_gap_estimate(const GeometryCache& cache, double threshold,
                                    double ratio_floor = kGapRatioRegressionFloor);

/// max_t (L^3 E)(t) <= (L^3 E)(0) + 1e-8 for runs started below threshold.
InequalityReport
check_monotone_scale_invariant_energy(std::span<const DiagnosticsRecord> trajectory,
                                      double threshold);

/// sup/inf of L over the run; pass if |log(L/L0)| stays within the band.
/// The band applies under the small-energy hypothesis; outside it the
/// check is reported as hypothesis_not_met with the observed values.
InequalityReport check_length_bounds(std::span<const DiagnosticsRecord> trajectory,
                                     double threshold, double band = 0.5);

struct DecayFit {
    double rate{};      // c in E(t) ~ amplitude * exp(-c t)
    double amplitude{}; // at t = 0
    double residual{};  // rms residual of the log-linear fit
    int samples{};
};

/// Log-linear least squares on (t, log E) over records with t in
/// [t_begin, t_end]. Throws InsufficientData (< 20 samples) and
/// NonPositiveEnergy.
DecayFit fit_exponential_decay(std::span<const DiagnosticsRecord> trajectory,
                               double t_begin, double t_end);

/// -int V K ds by quadrature; the same code path the flow engine uses for
/// its first-variation reference.
double directional_derivative(const GeometryCache& cache,
                              std::span<const double> v_field);

struct CorpusParams {
    int winding = 1;
    int n = 256;
    int min_modes = 1, max_modes = 3; // number of superposed modes
    int min_mode = 2, max_mode = 8;
    double min_amp = 0.005, max_amp = 0.03;
    double radius = 1.0;
};

/// Random band-limited radial perturbation of a w-circle; redraws (up to a
/// limit) if the combination fails immersion.
CurveState random_perturbed_circle(std::mt19937_64& rng, const CorpusParams& params);

std::string inequality_to_json(const InequalityReport& report);
std::string rigidity_to_json(const RigidityProfile& profile);
std::string decay_to_json(const DecayFit& fit);

/// One row per curve x check.
std::string sweep_csv_header();
std::string sweep_csv_row(const std::string& curve_id, const InequalityReport& report);

} // namespace icf

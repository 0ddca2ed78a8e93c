#pragma once

// The L^2-gradient flow of E = 1/2 int k_s^2 ds: normal velocity
// K = k_s4 + k^2 k_ss - 1/2 k k_s^2, advanced by a semi-implicit spectral
// scheme with an energy-monotone step controller. Along exact solutions
// E' = -||K||_2^2, which the controller uses as the rejection signal.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "icf/curve.hpp"

namespace icf {

/// Euler-Lagrange operator sampled on a curve; zero exactly on w-circles.
/// Under scaling gamma -> rho gamma, values scale by rho^-5.
struct ElOperatorField {
    std::vector<double> values;
    double l2_norm_sq{}; // int K^2 ds
};

ElOperatorField el_operator(const GeometryCache& cache);

/// One finite-difference probe of the first variation.
struct VariationSample {
    double h{};
    double fd_energy{}; // (E[gamma + h V nu] - E[gamma]) / h
    double fd_length{}; // (L[gamma + h V nu] - L[gamma]) / h
    double deviation{}; // |fd_energy - reference|
};

struct VariationReport {
    double reference{};        // -int V K ds, extended precision
    double reference_double{}; // same quadrature on the double pipeline
    double length_reference{}; // -int k V ds (d/dh of length)
    std::vector<VariationSample> samples;
};

/// Finite-difference check of dE = -int V K ds for a normal velocity V.
/// Energies on both sides are evaluated at extended precision so the
/// observed floor reflects the identity, not double rounding. V must be
/// band-limited to modes <= N/8 (BadParams otherwise); perturbations that
/// break immersion throw ImmersionLost.
VariationReport first_variation_check(const CurveState& curve,
                                      std::span<const double> v_field,
                                      std::span<const double> h_values);

enum class Scheme { imex_spectral, explicit_rk4 };

struct FlowConfig {
    double dt_initial = 1e-7;
    double dt_min = 1e-15;
    double dt_max = 1e-3;
    Scheme scheme = Scheme::imex_spectral;
    double energy_increase_tolerance = 0.0; // accept if dE <= tol * dt * ||K||^2
    int resample_every = 10;                // arc-length renormalisation cadence
    double t_end = 1.0;
    int snapshot_stride = 10;            // accepted steps per diagnostics record
    double small_energy_threshold = 1e-2; // flags the small-(L^3 E) regime
    double dt_growth = 1.2;
    double tol_conv = 1e-10; // on scale-invariant L^9 ||K||_2^2
    double tol_circ = 1e-6;  // on the circle-fit residual
    int convergence_snapshots = 10;

    void validate() const; // BadParams on violated invariants
};

struct FlowState {
    CurveState curve;
    GeometryCache cache;
    double time = 0;
    long step_count = 0;    // accepted steps
    double dissipation = 0; // D(t) = int_0^t ||K||_2^2 dtau (trapezoidal)
    double last_dt = 0;
    double initial_energy = 0;
};

/// Per-snapshot time series entry; column order matches the CSV header
/// "t,L,E,L3E,K_l2sq,k_sup,Q_blowup,circle_residual,min_speed".
struct DiagnosticsRecord {
    double t{};
    double length{};
    double energy{};
    double scale_energy{}; // L^3 E
    double k_l2sq{};       // ||K||_2^2
    double k_sup{};        // sup |k|
    double q_blowup{};     // L + int k_s5^2 ds
    double circle_residual{};
    double min_speed{};
};

DiagnosticsRecord diagnostics(const FlowState& state);

FlowState make_flow_state(CurveState initial, const FlowConfig& config);

/// Advance one accepted step: trial step (+ periodic arc-length resampling),
/// energy acceptance test, halving on rejection. Returns the accepted dt.
/// Throws StepFloorReached / ImmersionLost when dt_min is hit.
double step(FlowState& state, const FlowConfig& config);

enum class StopReason { converged, t_end, step_floor, immersion_lost };
const char* to_string(StopReason reason);

struct RunResult {
    std::vector<DiagnosticsRecord> records;
    FlowState final_state;
    StopReason reason{};
    std::string error_detail; // set for step_floor / immersion_lost
};

/// Called once per emitted snapshot (including the initial one).
using SnapshotObserver =
    std::function<void(const FlowState&, const DiagnosticsRecord&)>;

/// Run until t_end, convergence (L^9 ||K||^2 < tol_conv and circle residual
/// < tol_circ on `convergence_snapshots` consecutive snapshots) or error.
/// Errors are recorded in the result, not rethrown; the last accepted state
/// is returned either way.
RunResult run(const CurveState& initial, const FlowConfig& config,
              const SnapshotObserver& on_snapshot = {});

} // namespace icf

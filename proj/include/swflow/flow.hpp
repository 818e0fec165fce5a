#pragma once

#include "swflow/functional.hpp"

#include <optional>
#include <string>
#include <vector>

namespace swflow {

enum class Integrator { euler, rk4 };
enum class FlowMode { direct, gauge_fixed };

struct FlowParams {
    double dt_initial = 1e-3;
    double cfl_safety = 0.9;       // dt is capped by cfl_safety * h^2 / 8
    double t_max = 1.0;
    double grad_tol = 1e-8;
    Integrator integrator = Integrator::euler;
    int monitor_stride = 1;
    double local_energy_R = 0.0;   // 0 -> quarter of the shortest period
    std::vector<std::size_t> ball_centers; // empty -> 16 coarse-sublattice centers
    std::optional<Perturbation> perturbation;
    FlowMode mode = FlowMode::direct;

    double dt_cap(const LatticeGeometry& g) const;
    void validate(const LatticeGeometry& g) const;
};

// theta accumulates the gauge angle of the reconstruction ODE
// 2 d/dt (g^{-1} dg) = -d d* a~ with g = e^{i theta}, i.e.
// d theta/dt = (1/2) i d* a~; it stays 0 in direct mode. (This is the
// normalisation under which the reconstruction below is exact against the
// direct flow in the continuum.)
struct FlowState {
    double t = 0.0;
    Configuration cfg;
    ZeroForm theta;
    double dt = 0.0;
    TangentVector last_gradient;
    FlowMode mode = FlowMode::direct;
    int accept_streak = 0;
};

struct TraceRow {
    double t;
    double energy;
    double dissipation_rate;   // 2|grad_phi|^2 + |grad_a|^2 at this state
    double sup_phi;
    double grad_norm;          // sqrt(dissipation_rate)
    double local_energy_max;
    double dt;
};

struct FlowTrace {
    std::vector<TraceRow> rows;
    std::array<int, 4> dims{};
    double h = 0.0;
    FlowMode mode = FlowMode::direct;
    Integrator integrator = Integrator::euler;
    std::string init_label; // free-form description of the initial data
};

enum class FlowStatus { running, converged, time_limit, aborted_dt_underflow, aborted_nonfinite };

struct RunResult {
    FlowState state;
    FlowTrace trace;
    FlowStatus status = FlowStatus::running;
    std::string message;
};

FlowState make_flow_state(const LatticeGeometry& g, const Configuration& cfg0,
                          const FlowParams& p);

// One controlled step of the direct flow (phi., a.) = -(grad_phi, grad_a):
// explicit Euler or classical RK4, rejecting any step that raises the
// (perturbed) energy by more than 1e-12 and halving dt on rejection; dt grows
// by 1.2x after 50 consecutive accepted steps, capped by the CFL budget.
// Returns aborted_dt_underflow when dt falls below 1e-15.
FlowStatus step_direct(const LatticeGeometry& g, FlowState& state, const FlowParams& p);

// Same controlled step for the gauge-fixed parabolic system, which adds
// +(1/2) d*a~ phi~ to the spinor equation and -d d* a~ to the form equation
// (completing d*d to the Hodge Laplacian) and advances theta by the same
// integrator and step.
FlowStatus step_gauge_fixed(const LatticeGeometry& g, FlowState& state, const FlowParams& p);

// (phi, a) = (e^{i theta} phi~, a~ - 2 i d0 theta). Usage error on a state
// that was not produced in gauge_fixed mode.
Configuration reconstruct_direct(const LatticeGeometry& g, const FlowState& state);

// Steps until grad_norm < grad_tol or t >= t_max, recording monitors every
// monitor_stride accepted steps (plus the initial and final states).
RunResult run_flow(const LatticeGeometry& g, const Configuration& cfg0, const FlowParams& p);

// Default monitor ball set: 16 centers on the {0, n/2}^4 sublattice.
std::vector<std::size_t> default_ball_centers(const LatticeGeometry& g);

struct RateFitResult {
    double gamma_hat = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    double residual = 0.0; // rms log-residual of the fit
    double slope = 0.0;    // fitted d log(dE) / d log(t)
};

// Least-squares fit of log(E - E_inf) against log t over rows with
// t in [t_lo, t_hi]; gamma_hat solves slope = -1/(2 gamma - 1). Diagnostic
// only. Throws std::domain_error on a degenerate window (fewer than 20 rows,
// nonpositive times, or E <= E_inf anywhere in the window).
RateFitResult fit_rate(const FlowTrace& trace, double E_inf, double t_lo, double t_hi);

} // namespace swflow

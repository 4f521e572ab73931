#pragma once

#include <cstddef>
#include <vector>

#include "awr/constitutive.hpp"
#include "awr/diagnostics.hpp"
#include "awr/field.hpp"

namespace awr {

struct SolverConfig {
    double cfl = 0.4;              // in (0, 1]
    int max_dt_halvings = 20;
    int picard_iters = 2;          // dual formulation mobility refreshes
    double linear_tol = 1e-12;     // residual target of the implicit solves
    std::size_t sample_every = 100;  // diagnostics cadence in accepted steps

    void validate() const;
};

enum class Formulation { primitive, dual };

// (density, desired velocity) pair evolved by the dual scheme.
struct DualState {
    Field rho;
    Field w;
    double time = 0.0;
};

// One accepted step, either the new state or the first offending cell.
struct StepOutcome {
    enum class Reason { none, floor, ceiling, nonfinite };
    bool accepted = false;
    State state;
    std::size_t cell = 0;
    Reason reason = Reason::none;
};

struct DualStepOutcome {
    bool accepted = false;
    DualState state;
    std::size_t cell = 0;
    StepOutcome::Reason reason = StepOutcome::Reason::none;
};

// CFL time step dt = cfl * dx / max_j(|u_j| + |w_j - u_j| + 1e-12), capped by
// the remaining time to t_end.
double stable_dt(const State& state, const ModelParams& p, const SolverConfig& cfg,
                 double remainder);

// One Lie-split step of the primitive scheme: explicit local Lax-Friedrichs
// convection of (rho, rho u), then backward-Euler diffusion on u with
// lambda at the post-convection density (harmonic-mean interfaces).
StepOutcome try_step_primitive(const State& state, const ModelParams& p, double dt,
                               const SolverConfig& cfg);
State step_primitive(const State& state, const ModelParams& p, double dt,
                     const SolverConfig& cfg);

// One step of the dual scheme: upwind transport of rho*w by u = w - d(p+phi)/dx,
// then a rho update combining upwind transport by w with semi-implicit
// porous-medium diffusion (lagged-mobility Picard).
DualStepOutcome try_step_dual(const DualState& state, const ModelParams& p, double dt,
                              const SolverConfig& cfg);
DualState step_dual(const DualState& state, const ModelParams& p, double dt,
                    const SolverConfig& cfg);

// Reconstructions between the two formulations.
DualState to_dual(const State& state, const ModelParams& p);
State to_primitive(const DualState& state, const ModelParams& p);

struct Sample {
    State state;      // state at the sample time
    State pre_state;  // state one accepted step earlier (equals state at t = 0)
    double dt = 0.0;  // dt of the step that produced `state` (0 at t = 0)
};

struct Trajectory {
    std::vector<Sample> samples;
    State terminal;
    std::size_t steps = 0;
    std::size_t rejections = 0;
    std::vector<double> dt_history;
};

// Aggregates tracked on every accepted step (not just samples).
struct RunStats {
    double mass0 = 0.0;
    double momentum0 = 0.0;  // integral rho u (primitive) or rho w (dual)
    double mass_drift_rel = 0.0;
    double momentum_drift_rel = 0.0;
    double energy0 = 0.0;
    double energy_sup = 0.0;  // max over accepted steps
    double max_energy_step_increase_rel = 0.0;
    double min_rho = 1.0;
    double max_rho = 0.0;
};

struct RunResult {
    Trajectory trajectory;
    DiagnosticsRecord diagnostics;
    RunStats stats;
};

// Advances the initial state to t_end with stable_dt and the
// halve-on-rejection protocol; samples diagnostics every sample_every
// accepted steps and at t_end. Deterministic for identical inputs.
RunResult run(const State& initial, const ModelParams& p, double t_end,
              const SolverConfig& cfg, Formulation formulation);

}  // namespace awr

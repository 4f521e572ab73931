#include "awr/solver.hpp"

#include <cmath>
#include <string>

#include "awr/tridiag.hpp"

namespace awr {

void SolverConfig::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) fail(ErrorKind::argument, "cfl must lie in (0, 1]");
    if (max_dt_halvings < 0) fail(ErrorKind::argument, "max_dt_halvings must be nonnegative");
    if (picard_iters < 1) fail(ErrorKind::argument, "picard_iters must be at least 1");
    if (!(linear_tol > 0.0)) fail(ErrorKind::argument, "linear_tol must be positive");
    if (sample_every < 1) fail(ErrorKind::argument, "sample_every must be at least 1");
}

namespace {

double harmonic_mean(double a, double b) { return 2.0 * a * b / (a + b); }

// Gradient of p(rho) + phi(rho), the difference w - u.
Field barrier_gradient(const Field& rho, const ModelParams& p) {
    Field barrier(rho.grid());
    for (std::size_t j = 0; j < rho.size(); ++j)
        barrier[j] = pressure(rho[j], p) + phi(rho[j], p);
    return deriv_x(barrier);
}

StepOutcome::Reason scan_density(const std::vector<double>& rho, std::size_t& bad_cell) {
    for (std::size_t j = 0; j < rho.size(); ++j) {
        if (!std::isfinite(rho[j])) {
            bad_cell = j;
            return StepOutcome::Reason::nonfinite;
        }
        if (!(rho[j] > 0.0)) {
            bad_cell = j;
            return StepOutcome::Reason::floor;
        }
        if (!(rho[j] < 1.0)) {
            bad_cell = j;
            return StepOutcome::Reason::ceiling;
        }
    }
    return StepOutcome::Reason::none;
}

bool all_finite(const std::vector<double>& v, std::size_t& bad_cell) {
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!std::isfinite(v[j])) {
            bad_cell = j;
            return false;
        }
    }
    return true;
}

double cfl_dt(const Field& u, const Field& grad, double cfl, double dx, double remainder) {
    double speed = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        speed = std::max(speed, std::abs(u[j]) + std::abs(grad[j]) + 1e-12);
    return std::min(cfl * dx / speed, remainder);
}

}  // namespace

double stable_dt(const State& state, const ModelParams& p, const SolverConfig& cfg,
                 double remainder) {
    const Field grad = barrier_gradient(state.rho, p);
    return cfl_dt(state.u, grad, cfg.cfl, state.grid().dx, remainder);
}

StepOutcome try_step_primitive(const State& state, const ModelParams& p, double dt,
                               const SolverConfig& cfg) {
    const Grid& g = state.grid();
    const std::size_t n = g.n_cells;
    const double dtdx = dt / g.dx;

    std::vector<double> m(n);
    for (std::size_t j = 0; j < n; ++j) m[j] = state.rho[j] * state.u[j];

    // Local Lax-Friedrichs fluxes for the pressureless pair (rho, m). The
    // flux Jacobian has the double eigenvalue u, so the interface speed is
    // max(|u_L|, |u_R|).
    std::vector<double> flux_rho(n), flux_m(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jp = (j + 1) % n;
        const double a = std::max(std::abs(state.u[j]), std::abs(state.u[jp]));
        flux_rho[j] = 0.5 * (m[j] + m[jp]) - 0.5 * a * (state.rho[jp] - state.rho[j]);
        flux_m[j] = 0.5 * (m[j] * state.u[j] + m[jp] * state.u[jp]) - 0.5 * a * (m[jp] - m[j]);
    }

    StepOutcome out;
    std::vector<double> rho_star(n), m_star(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jm = (j + n - 1) % n;
        rho_star[j] = state.rho[j] - dtdx * (flux_rho[j] - flux_rho[jm]);
        m_star[j] = m[j] - dtdx * (flux_m[j] - flux_m[jm]);
    }
    out.reason = scan_density(rho_star, out.cell);
    if (out.reason != StepOutcome::Reason::none) return out;
    if (!all_finite(m_star, out.cell)) {
        out.reason = StepOutcome::Reason::nonfinite;
        return out;
    }

    // Backward-Euler diffusion on u at the post-convection density.
    std::vector<double> lam(n), iface(n);
    for (std::size_t j = 0; j < n; ++j) lam[j] = lambda_total(rho_star[j], p);
    for (std::size_t j = 0; j < n; ++j) iface[j] = harmonic_mean(lam[j], lam[(j + 1) % n]);

    const double r = dt / (g.dx * g.dx);
    std::vector<double> lower(n), diag(n), upper(n), rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jm = (j + n - 1) % n;
        lower[j] = -r * iface[jm];
        upper[j] = -r * iface[j];
        diag[j] = rho_star[j] + r * (iface[jm] + iface[j]);
        rhs[j] = m_star[j];
    }
    std::vector<double> u_new = solve_cyclic_tridiagonal(lower, diag, upper, rhs, cfg.linear_tol);
    if (!all_finite(u_new, out.cell)) {
        out.reason = StepOutcome::Reason::nonfinite;
        return out;
    }

    out.accepted = true;
    out.state = State{Field(g, std::move(rho_star)), Field(g, std::move(u_new)),
                      state.time + dt};
    return out;
}

State step_primitive(const State& state, const ModelParams& p, double dt,
                     const SolverConfig& cfg) {
    StepOutcome out = try_step_primitive(state, p, dt, cfg);
    if (!out.accepted)
        fail(ErrorKind::runtime,
             "primitive step rejected at cell " + std::to_string(out.cell) +
                 "; halve dt and retry");
    return std::move(out.state);
}

DualStepOutcome try_step_dual(const DualState& state, const ModelParams& p, double dt,
                              const SolverConfig& cfg) {
    const Grid& g = state.rho.grid();
    const std::size_t n = g.n_cells;
    const double dtdx = dt / g.dx;

    const Field grad = barrier_gradient(state.rho, p);
    std::vector<double> u(n), q(n);
    for (std::size_t j = 0; j < n; ++j) {
        u[j] = state.w[j] - grad[j];
        q[j] = state.rho[j] * state.w[j];
    }

    // Conservative upwind transport of q = rho w by u and of rho by w.
    std::vector<double> flux_q(n), flux_rho(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jp = (j + 1) % n;
        const double uh = 0.5 * (u[j] + u[jp]);
        flux_q[j] = uh > 0.0 ? uh * q[j] : uh * q[jp];
        const double wh = 0.5 * (state.w[j] + state.w[jp]);
        flux_rho[j] = wh > 0.0 ? wh * state.rho[j] : wh * state.rho[jp];
    }

    DualStepOutcome out;
    std::vector<double> q_new(n), rho_t(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jm = (j + n - 1) % n;
        q_new[j] = q[j] - dtdx * (flux_q[j] - flux_q[jm]);
        rho_t[j] = state.rho[j] - dtdx * (flux_rho[j] - flux_rho[jm]);
    }
    out.reason = scan_density(rho_t, out.cell);
    if (out.reason != StepOutcome::Reason::none && out.reason != StepOutcome::Reason::ceiling)
        return out;  // the implicit solve below may still pull a ceiling overshoot back
    if (!all_finite(q_new, out.cell)) {
        out.reason = StepOutcome::Reason::nonfinite;
        return out;
    }

    // Semi-implicit porous-medium diffusion with lagged-mobility Picard
    // iterations; the first mobility is evaluated at the pre-step density.
    const double r = dt / (g.dx * g.dx);
    std::vector<double> mobility(n), iface(n), lower(n), diag(n), upper(n);
    std::vector<double> rho_iter = state.rho.values();
    std::vector<double> rho_new;
    for (int it = 0; it < cfg.picard_iters; ++it) {
        out.reason = scan_density(rho_iter, out.cell);
        if (out.reason != StepOutcome::Reason::none) return out;
        for (std::size_t j = 0; j < n; ++j)
            mobility[j] = rho_iter[j] * (dpressure(rho_iter[j], p) + dphi(rho_iter[j], p));
        for (std::size_t j = 0; j < n; ++j)
            iface[j] = harmonic_mean(mobility[j], mobility[(j + 1) % n]);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t jm = (j + n - 1) % n;
            lower[j] = -r * iface[jm];
            upper[j] = -r * iface[j];
            diag[j] = 1.0 + r * (iface[jm] + iface[j]);
        }
        rho_new = solve_cyclic_tridiagonal(lower, diag, upper, rho_t, cfg.linear_tol);
        rho_iter = rho_new;
    }
    out.reason = scan_density(rho_new, out.cell);
    if (out.reason != StepOutcome::Reason::none) return out;

    std::vector<double> w_new(n);
    for (std::size_t j = 0; j < n; ++j) w_new[j] = q_new[j] / rho_new[j];
    if (!all_finite(w_new, out.cell)) {
        out.reason = StepOutcome::Reason::nonfinite;
        return out;
    }

    out.accepted = true;
    out.state = DualState{Field(g, std::move(rho_new)), Field(g, std::move(w_new)),
                          state.time + dt};
    return out;
}

DualState step_dual(const DualState& state, const ModelParams& p, double dt,
                    const SolverConfig& cfg) {
    DualStepOutcome out = try_step_dual(state, p, dt, cfg);
    if (!out.accepted)
        fail(ErrorKind::runtime, "dual step rejected at cell " + std::to_string(out.cell) +
                                     "; halve dt and retry");
    return std::move(out.state);
}

DualState to_dual(const State& state, const ModelParams& p) {
    return DualState{state.rho, offset_w(state, p), state.time};
}

State to_primitive(const DualState& state, const ModelParams& p) {
    const Field grad = barrier_gradient(state.rho, p);
    Field u(state.rho.grid());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = state.w[j] - grad[j];
    return State{state.rho, std::move(u), state.time};
}

namespace {

DiagnosticsRow make_row(const State& st, const State& pre, double dt, const ModelParams& p,
                        double A) {
    DiagnosticsRow row;
    row.time = st.time;
    row.energy = energy(st);
    row.bd_norm = bd_norm(st, p);
    row.max_rho = max_value(st.rho);
    row.min_rho = min_value(st.rho);
    row.ceiling_gap = 1.0 - row.max_rho;
    const Field du = deriv_x(st.u);
    row.oleinik_max = max_value(du);
    row.oleinik_bound = A / (A * st.time + 1.0);
    const Field piv = pi_field(st.rho, p);
    row.pi_l1 = lp_norm(piv, Norm::l1);
    row.pi_h1 = lp_norm(piv, Norm::l2) + lp_norm(deriv_x(piv), Norm::l2);
    const Field v = active_potential(st, p);
    row.visc_flux_l1 = lp_norm(v, Norm::l1);
    row.grad_u_l1 = lp_norm(du, Norm::l1);
    row.entropy_residual =
        dt > 0.0 ? entropy_balance(pre, st, dt, p, quadratic_entropy()) : 0.0;
    row.v_l2 = lp_norm(v, Norm::l2);
    return row;
}

const char* reason_name(StepOutcome::Reason r) {
    switch (r) {
        case StepOutcome::Reason::floor: return "positivity failure";
        case StepOutcome::Reason::ceiling: return "ceiling failure";
        case StepOutcome::Reason::nonfinite: return "non-finite state";
        default: return "unknown";
    }
}

}  // namespace

RunResult run(const State& initial, const ModelParams& p, double t_end,
              const SolverConfig& cfg, Formulation formulation) {
    p.validate();
    cfg.validate();
    initial.validate();
    if (!(t_end >= 0.0) || !std::isfinite(t_end))
        fail(ErrorKind::argument, "t_end must be a nonnegative finite time");

    RunResult res;
    const double A = oleinik_A(initial, p).A;
    res.diagnostics.oleinik_A = A;

    State view = initial;  // primitive-variable view of the current state
    DualState dual_state;
    if (formulation == Formulation::dual) dual_state = to_dual(initial, p);

    res.stats.mass0 = integrate(initial.rho);
    double abs_momentum0 = 0.0;
    {
        const Field& carrier = formulation == Formulation::dual ? dual_state.w : initial.u;
        double mom = 0.0;
        for (std::size_t j = 0; j < initial.rho.size(); ++j) {
            mom += initial.rho[j] * carrier[j];
            abs_momentum0 += initial.rho[j] * std::abs(carrier[j]);
        }
        res.stats.momentum0 = mom * initial.grid().dx;
        abs_momentum0 *= initial.grid().dx;
    }
    const double mom_scale = std::max({std::abs(res.stats.momentum0), abs_momentum0, 1e-30});
    res.stats.energy0 = energy(initial);
    res.stats.energy_sup = res.stats.energy0;
    res.stats.min_rho = min_value(initial.rho);
    res.stats.max_rho = max_value(initial.rho);

    res.trajectory.samples.push_back(Sample{initial, initial, 0.0});
    res.diagnostics.rows.push_back(make_row(initial, initial, 0.0, p, A));

    double energy_prev = res.stats.energy0;
    const double t_tol = 1e-12 * std::max(1.0, t_end);

    double time = initial.time;
    const double t_stop = initial.time + t_end;
    while (t_stop - time > t_tol) {
        const double remainder = t_stop - time;
        double dt = formulation == Formulation::primitive
                        ? stable_dt(view, p, cfg, remainder)
                        : cfl_dt(view.u, barrier_gradient(dual_state.rho, p), cfg.cfl,
                                 view.grid().dx, remainder);

        const State pre = view;
        StepOutcome::Reason last_reason = StepOutcome::Reason::none;
        std::size_t last_cell = 0;
        bool accepted = false;
        for (int halvings = 0; halvings <= cfg.max_dt_halvings; ++halvings) {
            if (formulation == Formulation::primitive) {
                StepOutcome out = try_step_primitive(view, p, dt, cfg);
                if (out.accepted) {
                    view = std::move(out.state);
                    accepted = true;
                    break;
                }
                last_reason = out.reason;
                last_cell = out.cell;
            } else {
                DualStepOutcome out = try_step_dual(dual_state, p, dt, cfg);
                if (out.accepted) {
                    dual_state = std::move(out.state);
                    view = to_primitive(dual_state, p);
                    accepted = true;
                    break;
                }
                last_reason = out.reason;
                last_cell = out.cell;
            }
            dt *= 0.5;
            ++res.trajectory.rejections;
        }
        if (!accepted)
            fail(ErrorKind::runtime,
                 std::string(reason_name(last_reason)) + " at t = " + std::to_string(time) +
                     ", cell " + std::to_string(last_cell) + " after " +
                     std::to_string(cfg.max_dt_halvings) + " dt halvings",
                 "dt_rejection_exhausted");

        time = view.time;
        ++res.trajectory.steps;
        res.trajectory.dt_history.push_back(dt);

        // Per-step aggregates (conservation, energy monotonicity, extrema).
        const double mass = integrate(view.rho);
        res.stats.mass_drift_rel = std::max(res.stats.mass_drift_rel,
                                            std::abs(mass - res.stats.mass0) /
                                                std::max(std::abs(res.stats.mass0), 1e-30));
        double mom = 0.0;
        const Field& carrier = formulation == Formulation::dual ? dual_state.w : view.u;
        for (std::size_t j = 0; j < view.rho.size(); ++j) mom += view.rho[j] * carrier[j];
        mom *= view.grid().dx;
        res.stats.momentum_drift_rel =
            std::max(res.stats.momentum_drift_rel,
                     std::abs(mom - res.stats.momentum0) / mom_scale);
        const double energy_now = energy(view);
        res.stats.energy_sup = std::max(res.stats.energy_sup, energy_now);
        res.stats.max_energy_step_increase_rel =
            std::max(res.stats.max_energy_step_increase_rel,
                     (energy_now - energy_prev) / std::max(energy_prev, 1e-30));
        energy_prev = energy_now;
        res.stats.min_rho = std::min(res.stats.min_rho, min_value(view.rho));
        res.stats.max_rho = std::max(res.stats.max_rho, max_value(view.rho));

        const bool at_end = t_stop - time <= t_tol;
        if (res.trajectory.steps % cfg.sample_every == 0 || at_end) {
            res.trajectory.samples.push_back(Sample{view, pre, dt});
            res.diagnostics.rows.push_back(make_row(view, pre, dt, p, A));
        }
    }

    res.trajectory.terminal = view;
    return res;
}

}  // namespace awr

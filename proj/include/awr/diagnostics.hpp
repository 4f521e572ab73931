#pragma once

#include <functional>
#include <string>
#include <vector>

#include "awr/constitutive.hpp"
#include "awr/field.hpp"

namespace awr {

// One diagnostics sample. Column order is frozen; see DiagnosticsRecord::csv_header.
struct DiagnosticsRow {
    double time = 0.0;
    double energy = 0.0;        // integral rho u^2
    double bd_norm = 0.0;       // (integral rho w^2)^(1/2)
    double max_rho = 0.0;
    double min_rho = 0.0;
    double ceiling_gap = 0.0;   // 1 - max_rho
    double oleinik_max = 0.0;   // max_j (du/dx)_j
    double oleinik_bound = 0.0; // A / (A t + 1)
    double pi_l1 = 0.0;
    double pi_h1 = 0.0;         // ||pi||_L2 + ||d pi/dx||_L2
    double visc_flux_l1 = 0.0;  // ||lambda(rho) du/dx||_L1
    double grad_u_l1 = 0.0;
    double entropy_residual = 0.0;  // S(v) = v^2/2 balance residual for the last step
    double v_l2 = 0.0;          // ||lambda(rho) du/dx||_L2
};

struct DiagnosticsRecord {
    std::vector<DiagnosticsRow> rows;
    double oleinik_A = 0.0;

    static std::string csv_header();
    std::string to_csv() const;
};

struct OleinikConstant {
    double A = 0.0;
};

// integral rho u^2 (the squared L2 norm of sqrt(rho) u).
double energy(const State& state);

// (integral rho w^2)^(1/2) with w the offset velocity.
double bd_norm(const State& state, const ModelParams& p);

// Active potential V = lambda(rho) du/dx, pointwise.
Field active_potential(const State& state, const ModelParams& p);

// A = max(max_j V_j, 0) evaluated on the initial state.
OleinikConstant oleinik_A(const State& initial, const ModelParams& p);

// max_j (du/dx)_j - A/(A t + 1); nonpositive means the one-sided Lipschitz
// bound holds at time t > 0.
double oleinik_excess(const State& state, double t, OleinikConstant A);

// Piecewise regularization of the positive part: zero up to eta, a cosine
// blend on [eta, 2 eta], then y - 3 eta/2. C^1 at both knots.
double f_eta(double y, double eta);
double f_eta_prime(double y, double eta);

// Convex entropy S given by its value and second derivative (the flux term
// needs no derivative on the torus: it integrates to zero).
struct ConvexEntropy {
    std::function<double(double)> value;
    std::function<double(double)> second;
};

ConvexEntropy quadratic_entropy();                       // S(v) = v^2/2
ConvexEntropy hinge_entropy(double center, double width); // smoothed |v - center|

// Residual of the entropy balance across one accepted step:
//   r = [int rho S(u)]_after - [int rho S(u)]_before
//       + dt * int S''(u) lambda(rho) (du/dx)^2   (after-state values).
// The inequality predicts r <= tolerance; the dissipation integral is taken
// at the after-state, consistent with backward-Euler diffusion.
double entropy_balance(const State& before, const State& after, double dt,
                       const ModelParams& p, const ConvexEntropy& S);

struct PowerLawFit {
    double slope = 0.0;
    double r_squared = 0.0;
    double log_intercept = 0.0;  // natural-log intercept of the fitted line
};

// Least-squares line through (log x, log y). Needs >= 3 strictly positive points.
PowerLawFit powerlaw_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace awr

#pragma once

#include "awr/field.hpp"

namespace awr {

// Parameters of the singular pressure law and its vacuum regularization.
// epsilon scales both singular functions; beta sets the blow-up rate at the
// packing density rho = 1; alpha < 1/2 controls the vacuum term.
struct ModelParams {
    double epsilon = 1e-3;
    double gamma = 2.0;
    double beta = 3.0;
    double alpha = 0.25;
    double quad_tol = 1e-10;  // tolerance for the potential/enthalpy quadratures

    void validate() const;
};

// p(rho) = epsilon * rho^gamma / (1 - rho)^beta, the barrier diverging at
// rho -> 1. Domain [0, 1); rho = 1 is a hard error, never clamped.
double pressure(double rho, const ModelParams& p);

// p'(rho) = epsilon * rho^(gamma-1) / (1-rho)^(beta+1) * [gamma(1-rho) + beta rho].
// rho = 0 is admissible only for gamma >= 1.
double dpressure(double rho, const ModelParams& p);

// phi(rho) = epsilon/(alpha-1) * rho^(alpha-1), negative and singular at
// vacuum; phi'(rho) = epsilon * rho^(alpha-2) > 0.
double phi(double rho, const ModelParams& p);
double dphi(double rho, const ModelParams& p);

// lambda(rho) = rho^2 p'(rho) + epsilon rho^alpha, the full viscosity.
// Satisfies lambda(rho)/rho >= epsilon on (0,1], the coercivity floor of the
// implicit solve.
double lambda_total(double rho, const ModelParams& p);

// pi(rho) = integral_0^rho [s p'(s) + epsilon s^(alpha-1)] ds. The vacuum
// piece integrates in closed form to (epsilon/alpha) rho^alpha; the p' piece
// is evaluated by adaptive quadrature to quad_tol.
double pi_potential(double rho, const ModelParams& p);

// H(rho) = integral_0^rho (p(s) + phi(s)) ds; the phi part in closed form,
// the p part by adaptive quadrature.
double enthalpy(double rho, const ModelParams& p);

// pi applied cellwise to a density field. Sorts the densities and integrates
// segment by segment so the cost is one sweep of [min rho, max rho] instead
// of n integrals from zero.
Field pi_field(const Field& rho, const ModelParams& p);

// Desired velocity w = u + d/dx (p(rho) + phi(rho)), computed pointwise then
// differentiated with the centered stencil.
Field offset_w(const State& state, const ModelParams& p);

}  // namespace awr

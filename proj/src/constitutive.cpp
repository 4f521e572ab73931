#include "awr/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "awr/quadrature.hpp"

namespace awr {
namespace {

// (1-rho)^(-q) via exp(-q log1p(-rho)) keeps relative accuracy when the
// ceiling study probes 1 - rho down to epsilon^(1/(beta-1)).
double inv_gap_pow(double rho, double q) { return std::exp(-q * std::log1p(-rho)); }

void check_unit_interval(double rho, bool allow_zero) {
    if (!std::isfinite(rho) || rho < 0.0 || (!allow_zero && rho == 0.0))
        fail(ErrorKind::argument, "density " + std::to_string(rho) + " below admissible range");
    if (rho >= 1.0)
        fail(ErrorKind::argument,
             "density " + std::to_string(rho) + " at or above the packing threshold");
}

}  // namespace

void ModelParams::validate() const {
    if (!(epsilon > 0.0)) fail(ErrorKind::argument, "epsilon must be positive");
    if (!(gamma >= 0.0)) fail(ErrorKind::argument, "gamma must be nonnegative");
    if (!(beta > 1.0)) fail(ErrorKind::argument, "beta must exceed 1");
    if (!(alpha > 0.0 && alpha < 0.5))
        fail(ErrorKind::argument, "alpha must lie in (0, 1/2)");
    if (!(quad_tol > 0.0)) fail(ErrorKind::argument, "quad_tol must be positive");
}

double pressure(double rho, const ModelParams& p) {
    check_unit_interval(rho, /*allow_zero=*/true);
    if (rho == 0.0) return p.gamma == 0.0 ? p.epsilon : 0.0;
    return p.epsilon * std::pow(rho, p.gamma) * inv_gap_pow(rho, p.beta);
}

double dpressure(double rho, const ModelParams& p) {
    check_unit_interval(rho, /*allow_zero=*/true);
    if (rho == 0.0) {
        if (p.gamma < 1.0)
            fail(ErrorKind::argument, "pressure slope is infinite at vacuum for gamma < 1");
        return p.gamma == 1.0 ? p.epsilon * p.gamma : 0.0;
    }
    const double bracket = p.gamma * (1.0 - rho) + p.beta * rho;
    return p.epsilon * std::pow(rho, p.gamma - 1.0) * inv_gap_pow(rho, p.beta + 1.0) * bracket;
}

double phi(double rho, const ModelParams& p) {
    if (!(rho > 0.0))
        fail(ErrorKind::argument, "phi is singular at vacuum; rho must be positive");
    return p.epsilon / (p.alpha - 1.0) * std::pow(rho, p.alpha - 1.0);
}

double dphi(double rho, const ModelParams& p) {
    if (!(rho > 0.0))
        fail(ErrorKind::argument, "dphi is singular at vacuum; rho must be positive");
    return p.epsilon * std::pow(rho, p.alpha - 2.0);
}

double lambda_total(double rho, const ModelParams& p) {
    check_unit_interval(rho, /*allow_zero=*/false);
    return rho * rho * dpressure(rho, p) + p.epsilon * std::pow(rho, p.alpha);
}

namespace {

// Integrand of the singular part of pi: s p'(s), smooth on [0, 1).
double pi_integrand(double s, const ModelParams& p) {
    if (s == 0.0) return 0.0;
    const double bracket = p.gamma * (1.0 - s) + p.beta * s;
    return p.epsilon * std::pow(s, p.gamma) * inv_gap_pow(s, p.beta + 1.0) * bracket;
}

}  // namespace

double pi_potential(double rho, const ModelParams& p) {
    check_unit_interval(rho, /*allow_zero=*/true);
    if (rho == 0.0) return 0.0;
    const double vacuum_part = p.epsilon / p.alpha * std::pow(rho, p.alpha);
    const double p_part =
        adaptive_quadrature([&](double s) { return pi_integrand(s, p); }, 0.0, rho, p.quad_tol);
    return vacuum_part + p_part;
}

double enthalpy(double rho, const ModelParams& p) {
    check_unit_interval(rho, /*allow_zero=*/true);
    if (rho == 0.0) return 0.0;
    const double phi_part = p.epsilon / (p.alpha - 1.0) * std::pow(rho, p.alpha) / p.alpha;
    const double p_part =
        adaptive_quadrature([&](double s) { return pressure(s, p); }, 0.0, rho, p.quad_tol);
    return phi_part + p_part;
}

Field pi_field(const Field& rho, const ModelParams& p) {
    const std::size_t n = rho.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rho[a] < rho[b]; });

    Field out(rho.grid());
    double prev_rho = 0.0;
    double prev_val = 0.0;
    const double vac_coef = p.epsilon / p.alpha;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        check_unit_interval(rho[j], /*allow_zero=*/true);
        if (rho[j] > prev_rho) {
            prev_val += adaptive_quadrature([&](double s) { return pi_integrand(s, p); },
                                            prev_rho, rho[j], p.quad_tol);
            prev_rho = rho[j];
        }
        out[j] = prev_val + vac_coef * std::pow(rho[j], p.alpha);
    }
    return out;
}

Field offset_w(const State& state, const ModelParams& p) {
    const std::size_t n = state.rho.size();
    Field barrier(state.grid());
    for (std::size_t j = 0; j < n; ++j)
        barrier[j] = pressure(state.rho[j], p) + phi(state.rho[j], p);
    Field grad = deriv_x(barrier);
    Field w(state.grid());
    for (std::size_t j = 0; j < n; ++j) w[j] = state.u[j] + grad[j];
    w.require_finite("offset velocity");
    return w;
}

}  // namespace awr

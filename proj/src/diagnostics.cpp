#include "awr/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace awr {

std::string DiagnosticsRecord::csv_header() {
    return "time,energy,bd_norm,max_rho,min_rho,ceiling_gap,oleinik_max,oleinik_bound,"
           "pi_l1,pi_h1,visc_flux_l1,grad_u_l1,entropy_residual,v_l2";
}

std::string DiagnosticsRecord::to_csv() const {
    std::string out = "# awrsim diagnostics v1\n" + csv_header() + "\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g,%.17g,%.17g,%.17g\n",
                      r.time, r.energy, r.bd_norm, r.max_rho, r.min_rho, r.ceiling_gap,
                      r.oleinik_max, r.oleinik_bound, r.pi_l1, r.pi_h1, r.visc_flux_l1,
                      r.grad_u_l1, r.entropy_residual, r.v_l2);
        out += buf;
    }
    return out;
}

double energy(const State& state) {
    double sum = 0.0;
    for (std::size_t j = 0; j < state.rho.size(); ++j)
        sum += state.rho[j] * state.u[j] * state.u[j];
    return sum * state.grid().dx;
}

double bd_norm(const State& state, const ModelParams& p) {
    const Field w = offset_w(state, p);
    double sum = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) sum += state.rho[j] * w[j] * w[j];
    return std::sqrt(sum * state.grid().dx);
}

Field active_potential(const State& state, const ModelParams& p) {
    const Field du = deriv_x(state.u);
    Field v(state.grid());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = lambda_total(state.rho[j], p) * du[j];
    return v;
}

OleinikConstant oleinik_A(const State& initial, const ModelParams& p) {
    const Field v = active_potential(initial, p);
    return {std::max(max_value(v), 0.0)};
}

double oleinik_excess(const State& state, double t, OleinikConstant A) {
    if (!(t > 0.0)) fail(ErrorKind::argument, "one-sided Lipschitz bound needs t > 0");
    const Field du = deriv_x(state.u);
    return max_value(du) - A.A / (A.A * t + 1.0);
}

double f_eta(double y, double eta) {
    if (!(eta > 0.0)) fail(ErrorKind::argument, "regularization width must be positive");
    if (y <= eta) return 0.0;
    if (y <= 2.0 * eta)
        return 0.5 * (y - eta) + eta / (2.0 * std::numbers::pi) *
                                     std::sin(std::numbers::pi * y / eta);
    return y - 1.5 * eta;
}

double f_eta_prime(double y, double eta) {
    if (!(eta > 0.0)) fail(ErrorKind::argument, "regularization width must be positive");
    if (y <= eta) return 0.0;
    if (y <= 2.0 * eta) return 0.5 + 0.5 * std::cos(std::numbers::pi * y / eta);
    return 1.0;
}

ConvexEntropy quadratic_entropy() {
    return {[](double v) { return 0.5 * v * v; }, [](double) { return 1.0; }};
}

ConvexEntropy hinge_entropy(double center, double width) {
    return {[center, width](double v) {
                const double d = std::abs(v - center);
                return d <= width ? 0.5 * d * d / width : d - 0.5 * width;
            },
            [center, width](double v) {
                return std::abs(v - center) < width ? 1.0 / width : 0.0;
            }};
}

double entropy_balance(const State& before, const State& after, double dt,
                       const ModelParams& p, const ConvexEntropy& S) {
    const double dx = after.grid().dx;
    double total_before = 0.0;
    double total_after = 0.0;
    for (std::size_t j = 0; j < before.rho.size(); ++j)
        total_before += before.rho[j] * S.value(before.u[j]);
    const Field du = deriv_x(after.u);
    double dissipation = 0.0;
    for (std::size_t j = 0; j < after.rho.size(); ++j) {
        total_after += after.rho[j] * S.value(after.u[j]);
        dissipation += S.second(after.u[j]) * lambda_total(after.rho[j], p) * du[j] * du[j];
    }
    return (total_after - total_before) * dx + dt * dissipation * dx;
}

PowerLawFit powerlaw_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        fail(ErrorKind::argument, "power-law fit needs at least 3 points");
    const auto n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::vector<double> lx(points.size()), ly(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].first > 0.0) || !(points[i].second > 0.0))
            fail(ErrorKind::argument, "power-law fit needs strictly positive data");
        lx[i] = std::log(points[i].first);
        ly[i] = std::log(points[i].second);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) fail(ErrorKind::argument, "power-law fit needs distinct abscissae");
    PowerLawFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.log_intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double fit_y = fit.log_intercept + fit.slope * lx[i];
        ss_res += (ly[i] - fit_y) * (ly[i] - fit_y);
        ss_tot += (ly[i] - mean_y) * (ly[i] - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace awr

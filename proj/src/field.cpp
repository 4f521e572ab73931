#include "awr/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace awr {

Grid make_grid(std::size_t n_cells, double length) {
    if (n_cells < 8)
        fail(ErrorKind::argument,
             "grid needs at least 8 cells, got " + std::to_string(n_cells));
    if (!(length > 0.0) || !std::isfinite(length))
        fail(ErrorKind::argument, "grid length must be positive and finite");
    Grid g;
    g.n_cells = n_cells;
    g.length = length;
    g.dx = length / static_cast<double>(n_cells);
    return g;
}

Field::Field(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n_cells)
        fail(ErrorKind::argument, "field length does not match grid cell count");
}

void Field::require_finite(const char* what) const {
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j]))
            fail(ErrorKind::runtime, std::string(what) + " is non-finite at cell " +
                                         std::to_string(j));
    }
}

void State::validate() const {
    if (rho.grid() != u.grid())
        fail(ErrorKind::argument, "state density and velocity live on different grids");
    rho.require_finite("density");
    u.require_finite("velocity");
    for (std::size_t j = 0; j < rho.size(); ++j) {
        if (!(rho[j] > 0.0))
            fail(ErrorKind::validation,
                 "density not strictly positive at cell " + std::to_string(j),
                 "positivity");
        if (!(rho[j] < 1.0))
            fail(ErrorKind::validation,
                 "density reaches the packing threshold at cell " + std::to_string(j),
                 "ceiling");
    }
    const double mass = integrate(rho);
    if (!(mass > 0.0) || !(mass < rho.grid().length))
        fail(ErrorKind::validation,
             "total mass must lie strictly between 0 and the torus length",
             "total_mass");
}

Field deriv_x(const Field& f) {
    f.require_finite("deriv_x input");
    const Grid& g = f.grid();
    Field out(g);
    const double inv2dx = 1.0 / (2.0 * g.dx);
    const std::size_t n = g.n_cells;
    for (std::size_t j = 0; j < n; ++j) {
        const double fp = f[(j + 1) % n];
        const double fm = f[(j + n - 1) % n];
        out[j] = (fp - fm) * inv2dx;
    }
    return out;
}

double integrate(const Field& f) {
    f.require_finite("integrate input");
    double sum = 0.0;
    for (double v : f.values()) sum += v;
    return sum * f.grid().dx;
}

double lp_norm(const Field& f, Norm p) {
    f.require_finite("lp_norm input");
    switch (p) {
        case Norm::l1: {
            double sum = 0.0;
            for (double v : f.values()) sum += std::abs(v);
            return sum * f.grid().dx;
        }
        case Norm::l2: {
            double sum = 0.0;
            for (double v : f.values()) sum += v * v;
            return std::sqrt(sum * f.grid().dx);
        }
        case Norm::linf: {
            double m = 0.0;
            for (double v : f.values()) m = std::max(m, std::abs(v));
            return m;
        }
    }
    return 0.0;
}

double max_value(const Field& f) {
    return *std::max_element(f.values().begin(), f.values().end());
}

double min_value(const Field& f) {
    return *std::min_element(f.values().begin(), f.values().end());
}

}  // namespace awr

#pragma once

#include <cstddef>
#include <vector>

#include "awr/errors.hpp"

namespace awr {

// Uniform periodic grid on the torus [0, length). Cell j is the interval
// [j*dx, (j+1)*dx) with center x_j = (j + 1/2)*dx; all index arithmetic
// wraps modulo n_cells.
struct Grid {
    std::size_t n_cells = 0;
    double length = 1.0;
    double dx = 0.0;

    double center(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dx; }

    std::size_t wrap(std::ptrdiff_t j) const {
        const auto n = static_cast<std::ptrdiff_t>(n_cells);
        return static_cast<std::size_t>(((j % n) + n) % n);
    }

    bool operator==(const Grid&) const = default;
};

Grid make_grid(std::size_t n_cells, double length = 1.0);

// Cell-averaged scalar field. Value semantics: operations return new fields
// and never mutate their inputs, so diagnostics cannot perturb solver state.
class Field {
public:
    Field() = default;
    Field(Grid grid, double fill = 0.0)
        : grid_(grid), values_(grid.n_cells, fill) {}
    Field(Grid grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t j) const { return values_[j]; }
    double& operator[](std::size_t j) { return values_[j]; }

    double at_wrapped(std::ptrdiff_t j) const { return values_[grid_.wrap(j)]; }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    // Throws ErrorKind::runtime if any entry is NaN/Inf; `what` names the
    // field in the message.
    void require_finite(const char* what) const;

private:
    Grid grid_;
    std::vector<double> values_;
};

// Cell-averaged (density, velocity) pair at a given time. Densities must
// stay strictly inside (0, 1); the solver enforces this per step, and
// validate() checks it on demand.
struct State {
    Field rho;
    Field u;
    double time = 0.0;

    const Grid& grid() const { return rho.grid(); }

    // Checks 0 < rho < 1 everywhere and 0 < total mass < torus length.
    void validate() const;
};

// Centered second-order difference (f_{j+1} - f_{j-1}) / (2 dx) with periodic
// wrap. Exact for constants; callers must pass periodic data (a linear ramp
// produces a large value at the seam).
Field deriv_x(const Field& f);

// Midpoint rule dx * sum_j f_j; exact for constants and the natural pairing
// for cell averages (integrate(deriv_x(f)) vanishes identically).
double integrate(const Field& f);

enum class Norm { l1, l2, linf };

// (integral |f|^p)^{1/p} for p in {1,2}; max_j |f_j| for the sup norm.
double lp_norm(const Field& f, Norm p);

double max_value(const Field& f);
double min_value(const Field& f);

}  // namespace awr

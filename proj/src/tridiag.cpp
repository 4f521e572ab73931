#include "awr/tridiag.hpp"

#include <cmath>

#include "awr/errors.hpp"

namespace awr {
namespace {

// Plain Thomas elimination for a non-cyclic system.
void thomas(const std::vector<double>& a, const std::vector<double>& b,
            const std::vector<double>& c, const std::vector<double>& d,
            std::vector<double>& x, std::vector<double>& scratch) {
    const std::size_t n = b.size();
    scratch.resize(n);
    double pivot = b[0];
    if (pivot == 0.0) fail(ErrorKind::runtime, "singular tridiagonal system");
    x[0] = d[0] / pivot;
    for (std::size_t j = 1; j < n; ++j) {
        scratch[j] = c[j - 1] / pivot;
        pivot = b[j] - a[j] * scratch[j];
        if (pivot == 0.0) fail(ErrorKind::runtime, "singular tridiagonal system");
        x[j] = (d[j] - a[j] * x[j - 1]) / pivot;
    }
    for (std::size_t j = n - 1; j-- > 0;) x[j] -= scratch[j + 1] * x[j + 1];
}

std::vector<double> solve_once(const std::vector<double>& lower,
                               const std::vector<double>& diag,
                               const std::vector<double>& upper,
                               const std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    // Rank-one correction of the two corner entries (lower[0], upper[n-1]).
    const double alpha = upper[n - 1];
    const double beta = lower[0];
    const double gamma = -diag[0];
    std::vector<double> b = diag;
    b[0] -= gamma;
    b[n - 1] -= alpha * beta / gamma;

    std::vector<double> x(n), z(n), scratch;
    thomas(lower, b, upper, rhs, x, scratch);
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;
    thomas(lower, b, upper, u, z, scratch);
    const double factor = (x[0] + beta * x[n - 1] / gamma) /
                          (1.0 + z[0] + beta * z[n - 1] / gamma);
    for (std::size_t j = 0; j < n; ++j) x[j] -= factor * z[j];
    return x;
}

}  // namespace

std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& lower,
                                             const std::vector<double>& diag,
                                             const std::vector<double>& upper,
                                             const std::vector<double>& rhs, double tol) {
    const std::size_t n = diag.size();
    if (n < 3 || lower.size() != n || upper.size() != n || rhs.size() != n)
        fail(ErrorKind::argument, "cyclic tridiagonal system needs n >= 3 matching bands");
    for (std::size_t j = 0; j < n; ++j) {
        if (!(std::abs(diag[j]) > std::abs(lower[j]) + std::abs(upper[j])))
            fail(ErrorKind::runtime,
                 "cyclic tridiagonal matrix is not strictly diagonally dominant");
    }

    std::vector<double> x = solve_once(lower, diag, upper, rhs);

    double rhs_scale = 1.0;
    for (double v : rhs) rhs_scale = std::max(rhs_scale, std::abs(v));
    double row_scale = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        row_scale = std::max(row_scale,
                             std::abs(lower[j]) + std::abs(diag[j]) + std::abs(upper[j]));

    std::vector<double> residual(n);
    for (int pass = 0; pass < 5; ++pass) {
        double max_res = 0.0;
        double x_scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) x_scale = std::max(x_scale, std::abs(x[j]));
        for (std::size_t j = 0; j < n; ++j) {
            const double xm = x[(j + n - 1) % n];
            const double xp = x[(j + 1) % n];
            residual[j] = rhs[j] - (lower[j] * xm + diag[j] * x[j] + upper[j] * xp);
            max_res = std::max(max_res, std::abs(residual[j]));
        }
        // Backward-error criterion: the row scale times the solution scale is
        // the level at which the residual is representable at all.
        if (max_res <= tol * std::max(rhs_scale, row_scale * x_scale)) return x;
        const std::vector<double> dx = solve_once(lower, diag, upper, residual);
        for (std::size_t j = 0; j < n; ++j) x[j] += dx[j];
    }
    fail(ErrorKind::runtime, "cyclic tridiagonal solve did not reach the residual tolerance");
}

}  // namespace awr

#pragma once

#include <functional>

namespace awr {

// Adaptive Gauss-Kronrod (G7/K15) quadrature of f over [a, b]. Bisection
// continues until each panel's Kronrod error estimate is below
// tol * max(1, |panel value|) or max_depth is reached, in which case
// ErrorKind::runtime is raised (tolerance unreachable).
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double tol, int max_depth = 60);

}  // namespace awr

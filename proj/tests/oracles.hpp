#pragma once

// Test-side reference implementations, kept independent of the library's
// evaluation paths on purpose.

#include <cstddef>
#include <functional>

namespace testor {

// Composite Simpson rule with n panels (n even recommended); the independent
// check for the adaptive quadrature used by the potential/enthalpy laws.
inline double composite_simpson(const std::function<double(double)>& f, double a, double b,
                                std::size_t n = 1000000) {
    const double h = (b - a) / static_cast<double>(n);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i)
        sum += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    // Divide by the realized step so representability of x +/- h cannot
    // contaminate the quotient.
    const double xp = x + h;
    const double xm = x - h;
    return (f(xp) - f(xm)) / (xp - xm);
}

}  // namespace testor

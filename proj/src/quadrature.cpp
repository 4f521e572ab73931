#include "awr/quadrature.hpp"

#include <array>
#include <cmath>

#include "awr/errors.hpp"

namespace awr {
namespace {

// Nodes/weights of the 15-point Kronrod extension of 7-point Gauss on [-1,1].
// Odd Kronrod nodes (indices 1,3,...) coincide with the Gauss nodes.
constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0;
    double resg = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        const double x = h * kronrod_nodes[i];
        double v;
        if (i == 7) {
            v = f(c);
            resk += kronrod_weights[i] * v;
            resg += gauss_weights[3] * v;
        } else {
            v = f(c - x) + f(c + x);
            resk += kronrod_weights[i] * v;
            if (i % 2 == 1) resg += gauss_weights[i / 2] * v;
        }
    }
    resk *= h;
    resg *= h;
    return {resk, std::abs(resk - resg)};
}

double recurse(const std::function<double(double)>& f, double a, double b, double tol,
               int depth, int max_depth) {
    const PanelResult r = panel(f, a, b);
    if (r.error <= tol * std::max(1.0, std::abs(r.kronrod))) return r.kronrod;
    if (depth >= max_depth)
        fail(ErrorKind::runtime, "quadrature did not converge to the requested tolerance");
    const double c = 0.5 * (a + b);
    return recurse(f, a, c, tol, depth + 1, max_depth) +
           recurse(f, c, b, tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double tol, int max_depth) {
    if (a == b) return 0.0;
    return recurse(f, a, b, tol, 0, max_depth);
}

}  // namespace awr

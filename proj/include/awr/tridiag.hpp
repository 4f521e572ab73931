#pragma once

#include <vector>

namespace awr {

// Solves the periodic tridiagonal system
//   lower[j] x[j-1] + diag[j] x[j] + upper[j] x[j+1] = rhs[j],  indices mod n,
// by cyclic elimination (Thomas plus a rank-one correction), followed by
// iterative refinement until the max-norm residual is below
// tol * max(1, ||rhs||_inf). Requires strict diagonal dominance; raises
// ErrorKind::runtime otherwise.
std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& lower,
                                             const std::vector<double>& diag,
                                             const std::vector<double>& upper,
                                             const std::vector<double>& rhs, double tol);

}  // namespace awr

#pragma once

#include <functional>

namespace bmom::quadrature {

// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
// Throws numeric_error when the subdivision depth is exhausted before the
// local error bound is met; the message carries the offending subinterval.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 48);

}  // namespace bmom::quadrature

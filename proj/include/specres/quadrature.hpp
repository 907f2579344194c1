#pragma once

#include <functional>

namespace specres {

// Adaptive Gauss-Kronrod 7/15 integration of f over the finite interval
// [lo, hi]. Bisects the panel with the largest error estimate until the
// accumulated estimate drops below max(abs_tol, rel_tol * |integral|).
//
// Throws QuadratureFailure once max_panels panels have been spent without
// reaching tolerance, and InvalidArgument on a malformed interval.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, double rel_tol = 0.0, int max_panels = 2000);

}  // namespace specres

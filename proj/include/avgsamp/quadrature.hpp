#pragma once

#include <functional>

#include "avgsamp/common.hpp"

namespace avgsamp {

/// Adaptive Gauss-Legendre integration of a complex-valued integrand over
/// [a, b]. A 15-point rule per panel, bisected until the two-half estimate
/// agrees with the whole-panel one to rel_tol (abs_tol guards integrals near
/// zero). Throws NumericalError when the subdivision depth is exhausted.
cdouble integrate(const std::function<cdouble(double)>& f, double a, double b,
                  double rel_tol = 1e-10, double abs_tol = 1e-14);

}  // namespace avgsamp

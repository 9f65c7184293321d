#pragma once

#include <functional>

namespace evidencia {

/// Adaptive Gauss-Kronrod (15/7) integration on [a, b].
/// Bisects until the embedded error estimate satisfies
/// |err| <= max(abs_tol, rel_tol * |integral|) per panel share.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 0.0);

/// Integral over [a, infinity) for integrands decaying to 0: the upper limit
/// is doubled until the last segment is negligible and the integrand has
/// fallen below 1e-14 of the largest magnitude seen.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol = 1e-10);

} // namespace evidencia

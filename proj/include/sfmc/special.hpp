#pragma once

#include <functional>

namespace sfmc {

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// CDF of a gamma(shape, scale) variate.
double gamma_cdf(double x, double shape, double scale);

/// Poisson pmf, computed in log space for stability.
double poisson_pmf(unsigned k, double mean);

/// Chi-squared upper tail probability with the given degrees of freedom.
double chi_squared_sf(double x, int dof);

/// Adaptive Gauss-Kronrod (G7/K15) quadrature on a finite interval to the
/// given absolute tolerance.  Throws NumericFailure when the subdivision
/// limit is hit before convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

/// Integral of f over [0, inf) via the substitution x = s*u/(1-u), where s
/// is a characteristic scale of the integrand.
double integrate_half_line(const std::function<double(double)>& f,
                           double scale, double abs_tol);

} // namespace sfmc

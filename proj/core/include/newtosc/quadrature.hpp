#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace newtosc {

// Value plus an absolute error estimate.
struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

// Complex value plus an absolute error estimate.
struct CQuadResult {
  std::complex<double> value;
  double error = 0.0;
};

// Integral of f over [a, b] by double-exponential quadrature. Endpoint
// singularities are allowed as long as the integral is finite; integrand
// values that are not finite count as 0. tol steers the refinement depth;
// the achieved accuracy is usually far better and is reported in error.
QuadResult integrate_finite(const std::function<double(double)>& f, double a,
                            double b, double tol);

// Same kernel, but the integrand also receives the offset xc of x from the
// nearest interval endpoint, with x == endpoint - xc exactly: xc < 0 near a,
// xc > 0 near b. The offset resolves distances far below the spacing of
// representable doubles around a nonzero endpoint, which an integrand with
// an endpoint singularity needs to keep its mass there.
QuadResult integrate_finite(const std::function<double(double, double)>& f,
                            double a, double b, double tol);

// Complex-valued variant of integrate_finite. Named separately: a lambda
// returning double converts to both function types, which would make an
// overload ambiguous.
CQuadResult integrate_finite_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double tol);

// Integral of f over [a, inf), a > 0, through the substitution u = 1/y.
// The transformed integrand must stay integrable at u = 0.
QuadResult integrate_tail(const std::function<double(double)>& f, double a,
                          double tol);

// Upper bound for the absolute value of every root of sum_k c[k] y^k.
// At least 1 even for constant input.
double cauchy_root_bound(const std::vector<double>& c);

// Ascending roots of sum_k c[k] y^k in (0, inf) located by sign changes on
// a fine grid under the Cauchy bound, sharpened by bisection. Roots of even
// multiplicity do not change sign and are not reported.
std::vector<double> positive_roots(const std::vector<double>& c);

}  // namespace newtosc

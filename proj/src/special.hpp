#pragma once

#include <vector>

namespace latband::special {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Cached rule; computed once per n by Newton iteration on the Legendre
// polynomial.  Thread safe.
const GaussRule& gauss_legendre(int n);

// Exponentially scaled modified Bessel functions e^-x I0(x) and e^-x I1(x)
// for x >= 0, accurate to a few ulp across the power-series / asymptotic
// crossover.
double scaled_bessel_i0(double x);
double scaled_bessel_i1(double x);

// Coefficients u_0..u_{m-1} of the large-argument expansion
//   e^-x I0(x) = (2 pi x)^{-1/2} (u_0 + u_1/x + u_2/x^2 + ...),
// used to build analytic integral tails.
std::vector<double> bessel_i0_tail_coeffs(int m);

// Generalized exponential integral E_p(x) = int_1^inf u^-p e^-xu du for
// real p > 0 and x >= 0 (x = 0 needs p > 1).
double expint(double p, double x);

// 1/(p-1) - E_p(x) for p > 1, evaluated without cancellation as x -> 0.
// This is int_1^inf u^-p (1 - e^-xu) du.
double expint_complement(double p, double x);

}  // namespace latband::special

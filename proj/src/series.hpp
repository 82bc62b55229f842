#pragma once

#include <vector>

namespace latband {

// Truncated power series with no constant term: c[i] multiplies x^(i+1).
// Everything in this toolkit manipulates expansions around zero of functions
// vanishing at zero, so the constant term is omitted by construction.
struct PowerSeries {
  std::vector<double> c;

  int order() const { return static_cast<int>(c.size()); }
  double coeff(int n) const;  // coefficient of x^n, n >= 1; zero past order
};

// Compose g = f(alpha(x)) truncated at `order`, both series constant-free.
PowerSeries compose(const PowerSeries& f, const PowerSeries& alpha, int order);

// Invert lambda = -(mu0 lambda + mu0^2) f(alpha) for alpha(lambda) through
// order N, given a simple zero of f (f'(0) < 0).  The leading coefficient is
// -1/(mu0^2 f'(0)); the rest follow by triangular coefficient matching.
PowerSeries invert_linear(const PowerSeries& f, double mu0, int n);

// Same equation with a double zero (f'(0) = 0, f''(0) < 0), inverted in the
// variable sigma = sqrt(lambda): alpha(sigma) through order N with leading
// coefficient (-mu0^2 f''(0)/2)^{-1/2}.
PowerSeries invert_sqrt(const PowerSeries& f, double mu0, int n);

// Leading coefficient of the log-corrected regimes, where the equation picks
// up a second driving series g.  Dispatches on the hypotheses: g'(0) > 0
// gives 1/(mu0^2 g'(0)); g flat to third order with f''(0) < 0 gives
// (-mu0^2 f''(0)/2)^{-1/2}.
double leading_log_coefficient(const PowerSeries& f, const PowerSeries& g, double mu0);

// Moment integral int_0^gamma u^s / (u^2 - theta) du for theta < 0, by the
// exact recurrence I_s = gamma^{s-1}/(s-1) + theta I_{s-2}.
double moment_integral(double gamma, double theta, int s);

// Wallis integral int_{-pi/2}^{pi/2} cos^n t dt.
double cosine_moment(int n);

}  // namespace latband

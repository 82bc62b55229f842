#include "series.hpp"

#include <cmath>

#include "errors.hpp"

namespace latband {

double PowerSeries::coeff(int n) const {
  if (n < 1) throw InvalidArgument("power series: coefficients start at order 1");
  if (n > order()) return 0.0;
  return c[n - 1];
}

namespace {

// Truncated product of two constant-free series (result also constant-free,
// starting at order 2 or higher).
PowerSeries multiply(const PowerSeries& a, const PowerSeries& b, int order) {
  PowerSeries r;
  r.c.assign(order, 0.0);
  for (int i = 1; i <= a.order(); ++i) {
    if (a.c[i - 1] == 0.0) continue;
    for (int j = 1; j <= b.order() && i + j <= order; ++j)
      r.c[i + j - 1] += a.c[i - 1] * b.c[j - 1];
  }
  return r;
}

}  // namespace

PowerSeries compose(const PowerSeries& f, const PowerSeries& alpha, int order) {
  PowerSeries out;
  out.c.assign(order, 0.0);
  PowerSeries pow = alpha;  // alpha^k, truncated
  for (int k = 1; k <= order; ++k) {
    double fk = f.coeff(k);
    if (fk != 0.0)
      for (int m = k; m <= order; ++m) out.c[m - 1] += fk * pow.coeff(m);
    if (k < order) pow = multiply(pow, alpha, order);
  }
  return out;
}

PowerSeries invert_linear(const PowerSeries& f, double mu0, int n) {
  if (!(mu0 > 0.0)) throw InvalidArgument("invert_linear: need mu0 > 0");
  if (n < 1) throw InvalidArgument("invert_linear: need order >= 1");
  const double a1 = f.coeff(1);
  if (!(a1 < 0.0)) throw InvalidArgument("invert_linear: need f'(0) < 0");

  PowerSeries alpha;
  alpha.c.assign(n, 0.0);
  alpha.c[0] = -1.0 / (mu0 * mu0 * a1);
  // Matching order by order: the residual of
  //   T(x) = x + (mu0 x + mu0^2) f(alpha(x))
  // at order m is linear in c_m with slope mu0^2 a1, everything of lower
  // order already being zero.
  for (int m = 2; m <= n; ++m) {
    PowerSeries fa = compose(f, alpha, m);
    double t = (m == 1 ? 1.0 : 0.0) + mu0 * mu0 * fa.coeff(m) + mu0 * fa.coeff(m - 1);
    alpha.c[m - 1] = -t / (mu0 * mu0 * a1);
  }
  return alpha;
}

PowerSeries invert_sqrt(const PowerSeries& f, double mu0, int n) {
  if (!(mu0 > 0.0)) throw InvalidArgument("invert_sqrt: need mu0 > 0");
  if (n < 1) throw InvalidArgument("invert_sqrt: need order >= 1");
  if (f.coeff(1) != 0.0) throw InvalidArgument("invert_sqrt: need f'(0) = 0");
  const double a2 = f.coeff(2);
  if (!(a2 < 0.0)) throw InvalidArgument("invert_sqrt: need f''(0) < 0");

  PowerSeries alpha;
  alpha.c.assign(n, 0.0);
  const double c1 = 1.0 / std::sqrt(-mu0 * mu0 * a2);
  alpha.c[0] = c1;
  // In sigma = sqrt(lambda) the equation reads
  //   T(sigma) = sigma^2 + (mu0 sigma^2 + mu0^2) f(alpha(sigma)),
  // and the order-(m+1) residual is linear in c_m with slope 2 mu0^2 a2 c1.
  for (int m = 2; m <= n; ++m) {
    PowerSeries fa = compose(f, alpha, m + 1);
    double t = (m + 1 == 2 ? 1.0 : 0.0) + mu0 * mu0 * fa.coeff(m + 1) + mu0 * fa.coeff(m - 1);
    alpha.c[m - 1] = -t / (2.0 * mu0 * mu0 * a2 * c1);
  }
  return alpha;
}

double leading_log_coefficient(const PowerSeries& f, const PowerSeries& g, double mu0) {
  if (!(mu0 > 0.0)) throw InvalidArgument("leading_log_coefficient: need mu0 > 0");
  const double b1 = g.coeff(1);
  if (b1 > 0.0) return 1.0 / (mu0 * mu0 * b1);
  if (b1 == 0.0 && g.coeff(2) == 0.0 && f.coeff(1) == 0.0 && f.coeff(2) < 0.0)
    return 1.0 / std::sqrt(-mu0 * mu0 * f.coeff(2));
  throw InvalidArgument("leading_log_coefficient: hypotheses of neither regime hold");
}

double moment_integral(double gamma, double theta, int s) {
  if (!(theta < 0.0)) throw DomainError("moment_integral: need theta < 0");
  if (!(gamma > 0.0)) throw InvalidArgument("moment_integral: need gamma > 0");
  if (s < 0) throw InvalidArgument("moment_integral: need s >= 0");
  const double rt = std::sqrt(-theta);
  const double i0 = std::atan(gamma / rt) / rt;
  if (s == 0) return i0;
  const double i1 = 0.5 * std::log((gamma * gamma - theta) / (-theta));
  if (s == 1) return i1;
  double even = i0, odd = i1;
  double gpow = gamma;  // gamma^(k-1) at step k
  for (int k = 2; k <= s; ++k) {
    double& slot = (k % 2 == 0) ? even : odd;
    slot = gpow / (k - 1) + theta * slot;
    gpow *= gamma;
  }
  return (s % 2 == 0) ? even : odd;
}

double cosine_moment(int n) {
  if (n < 0) throw InvalidArgument("cosine_moment: need n >= 0");
  double a = (n % 2 == 0) ? 3.14159265358979323846 : 2.0;
  for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) a *= (k - 1.0) / k;
  return a;
}

}  // namespace latband

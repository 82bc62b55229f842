#include "special.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "errors.hpp"

namespace latband::special {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kEps = std::numeric_limits<double>::epsilon();

GaussRule compute_gauss(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  // Roots come in +- pairs; solve the upper half and mirror.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Recurrence for P_n(x) and derivative.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one clean-up step after convergence
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        x -= p1 / dp;
        break;
      }
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;  // ascending order
    r.w[i] = w;
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 2) throw InvalidArgument("gauss_legendre: need n >= 2");
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

// Power series below x = 30 (all terms positive, no cancellation), uniform
// asymptotic expansion above.  At the crossover the asymptotic tail's
// smallest term is ~6e-17, so both branches agree to a few ulp.
double scaled_bessel_i0(double x) {
  if (!(x >= 0.0)) throw InvalidArgument("scaled_bessel_i0: need x >= 0");
  if (x == 0.0) return 1.0;
  if (x <= 30.0) {
    double t = 1.0, sum = 1.0;
    double q = 0.25 * x * x;
    for (int k = 1; k < 400; ++k) {
      t *= q / (static_cast<double>(k) * k);
      sum += t;
      if (t < kEps * sum) break;
    }
    return sum * std::exp(-x);
  }
  // e^-x I0(x) ~ (2 pi x)^{-1/2} sum_k u_k x^-k, u_k = u_{k-1} (2k-1)^2 / (8k);
  // truncate at the smallest term.
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    double next = term * ((2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < kEps * sum) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

double scaled_bessel_i1(double x) {
  if (!(x >= 0.0)) throw InvalidArgument("scaled_bessel_i1: need x >= 0");
  if (x == 0.0) return 0.0;
  if (x <= 30.0) {
    double t = 0.5 * x, sum = t;
    double q = 0.25 * x * x;
    for (int k = 1; k < 400; ++k) {
      t *= q / (static_cast<double>(k) * (k + 1.0));
      sum += t;
      if (t < kEps * sum) break;
    }
    return sum * std::exp(-x);
  }
  // nu = 1 expansion: w_k = -w_{k-1} (4 - (2k-1)^2) / (8k).
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    double next = -term * (4.0 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

std::vector<double> bessel_i0_tail_coeffs(int m) {
  if (m < 1) throw InvalidArgument("bessel_i0_tail_coeffs: need m >= 1");
  std::vector<double> u(m);
  u[0] = 1.0;
  for (int k = 1; k < m; ++k)
    u[k] = u[k - 1] * ((2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k);
  return u;
}

namespace {

bool is_integer(double p) { return p == std::floor(p); }

double digamma_positive_int(int n) {
  double h = 0.0;
  for (int j = 1; j < n; ++j) h += 1.0 / j;
  return h - kEulerGamma;
}

// Small-x series for E_p, 0 < x < 1.  Non-integer p uses the reflection form;
// integer p = n replaces the singular term with the classical log form.
double expint_series(double p, double x) {
  double sum = 0.0;
  if (is_integer(p)) {
    int n = static_cast<int>(p);
    // (-x)^{n-1}/(n-1)! (psi(n) - ln x) - sum_{k != n-1} (-x)^k / (k! (1-n+k))
    double pre = 1.0;
    for (int j = 1; j < n; ++j) pre *= -x / j;
    sum = pre * (digamma_positive_int(n) - std::log(x));
    double powk = 1.0;  // (-x)^k / k!
    for (int k = 0; k < 120; ++k) {
      if (k != n - 1) {
        double t = powk / (1.0 - n + k);
        sum -= t;
        if (k > n && std::abs(t) < kEps * std::abs(sum)) break;
      }
      powk *= -x / (k + 1.0);
    }
    return sum;
  }
  sum = std::tgamma(1.0 - p) * std::pow(x, p - 1.0);
  double powk = 1.0;
  for (int k = 0; k < 120; ++k) {
    double t = powk / (1.0 - p + k);
    sum -= t;
    if (k > p && std::abs(t) < kEps * std::abs(sum)) break;
    powk *= -x / (k + 1.0);
  }
  return sum;
}

// Modified Lentz continued fraction, reliable for x >= 1.
double expint_cf(double p, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + p;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 400; ++i) {
    double a = -i * (p - 1.0 + i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h * std::exp(-x);
  }
  throw ConvergenceError("expint: continued fraction stalled", std::abs(h));
}

}  // namespace

double expint(double p, double x) {
  if (!(p > 0.0) || !(x >= 0.0)) throw InvalidArgument("expint: need p > 0, x >= 0");
  if (x == 0.0) {
    if (p <= 1.0) throw DomainError("expint: E_p(0) diverges for p <= 1");
    return 1.0 / (p - 1.0);
  }
  if (x < 1.0) return expint_series(p, x);
  return expint_cf(p, x);
}

double expint_complement(double p, double x) {
  if (!(p > 1.0) || !(x >= 0.0))
    throw InvalidArgument("expint_complement: need p > 1, x >= 0");
  if (x == 0.0) return 0.0;
  if (x >= 1.0) return 1.0 / (p - 1.0) - expint(p, x);
  // Same series rearranged so the 1/(p-1) piece cancels exactly; what is left
  // vanishes ~ x as x -> 0, so tiny arguments lose nothing.
  double sum = 0.0;
  if (is_integer(p)) {
    int n = static_cast<int>(p);
    double pre = 1.0;
    for (int j = 1; j < n; ++j) pre *= -x / j;
    sum = -pre * (digamma_positive_int(n) - std::log(x));
    double powk = -x;  // (-x)^k / k!, starting at k = 1
    for (int k = 1; k < 120; ++k) {
      if (k != n - 1) {
        double t = powk / (1.0 - n + k);
        sum += t;
        if (k > n && std::abs(t) < kEps * std::abs(sum)) break;
      }
      powk *= -x / (k + 1.0);
    }
    return sum;
  }
  sum = -std::tgamma(1.0 - p) * std::pow(x, p - 1.0);
  double powk = -x;
  for (int k = 1; k < 120; ++k) {
    double t = powk / (1.0 - p + k);
    sum += t;
    if (k > p && std::abs(t) < kEps * std::abs(sum)) break;
    powk *= -x / (k + 1.0);
  }
  return sum;
}

}  // namespace latband::special

#include "asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "errors.hpp"
#include "series.hpp"

namespace latband {

namespace {

constexpr double kPi = 3.14159265358979323846;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  const double step = (std::log(hi) - std::log(lo)) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = std::exp(std::log(lo) + step * i);
  out.front() = lo;
  out.back() = hi;
  return out;
}

Check make_check(std::string name, double measured, double predicted, double tol) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.predicted = predicted;
  c.rel_dev = predicted != 0.0 ? measured / predicted - 1.0 : measured;
  c.tol = tol;
  c.pass = std::isfinite(c.rel_dev) && std::abs(c.rel_dev) <= tol;
  return c;
}

// Root of gap(s) == target in log s for a gap that increases from 0 toward
// the full edge integral.  The bracket is grown geometrically from the seed;
// callers guarantee 0 < target < lim_{s->inf} gap(s).
double solve_gap_root(const std::function<double(double)>& gap, double target, double s_seed) {
  double hi = s_seed;
  double g_hi = gap(hi);
  for (int i = 0; g_hi < target; ++i) {
    if (i >= 200) throw ConvergenceError("gap bracket expansion failed upward", g_hi);
    hi *= 16.0;
    g_hi = gap(hi);
  }
  double lo = hi;
  double g_lo = g_hi;
  while (g_lo > target) {
    lo /= 16.0;
    if (lo < 1e-290) throw ConvergenceError("gap bracket expansion failed downward", g_lo);
    g_lo = gap(lo);
  }
  if (g_lo == target) return lo;
  if (g_hi == target) return hi;

  double u_lo = std::log(lo), u_hi = std::log(hi);
  double f_lo = g_lo - target, f_hi = g_hi - target;
  const double f_tol = 1e-12 * target;
  for (int it = 0; it < 200; ++it) {
    double u;
    if (u_hi - u_lo > 0.5 || f_hi == f_lo) {
      u = 0.5 * (u_lo + u_hi);
    } else {
      u = u_hi - f_hi * (u_hi - u_lo) / (f_hi - f_lo);
      if (!(u > u_lo && u < u_hi)) u = 0.5 * (u_lo + u_hi);
    }
    const double f = gap(std::exp(u)) - target;
    if (std::abs(f) <= f_tol || u_hi - u_lo < 1e-14) return std::exp(u);
    if (f < 0.0) {
      u_lo = u;
      f_lo = f;
    } else {
      u_hi = u;
      f_hi = f;
    }
  }
  return std::exp(0.5 * (u_lo + u_hi));
}

// Value at u = 0 of the quadratic through three (u, r) samples.
double quadratic_limit(const double u[3], const double r[3]) {
  double out = 0.0;
  for (int i = 0; i < 3; ++i) {
    double w = 1.0;
    for (int m = 0; m < 3; ++m) {
      if (m == i) continue;
      w *= u[m] / (u[m] - u[i]);
    }
    out += w * r[i];
  }
  return out;
}

// Limit of r = c + A/(L + B) from three samples at equally spaced L.
// Consecutive differences give the ratio rho = t3/t1 of shifted abscissae,
// which pins B and then A.  Falls back to the last sample if the data do
// not look like a decaying reciprocal-log correction.
double reciprocal_log_limit(double delta, const double r[3]) {
  const double d12 = r[0] - r[1];
  const double d23 = r[1] - r[2];
  if (d23 == 0.0) return r[2];
  const double rho = d12 / d23;
  if (!(rho > 1.0 + 1e-9)) return r[2];
  const double t1 = 2.0 * delta / (rho - 1.0);
  const double a = d12 * t1 * (t1 + delta) / delta;
  return r[0] - a / t1;
}

}  // namespace

Regime regime_of(int d) {
  if (d < 3) throw InvalidArgument("asymptotic regimes require dimension >= 3");
  if (d == 3) return Regime::d3;
  if (d == 4) return Regime::d4;
  return d % 2 == 1 ? Regime::odd_high : Regime::even_high;
}

double unit_sphere_area(int d) {
  if (d < 2) throw InvalidArgument("unit_sphere_area requires dimension >= 2");
  double area = 2.0 * kPi;
  for (int n = 1; n <= d - 2; ++n) area *= cosine_moment(n);
  return area;
}

double edge_amplitude(const Quasimomentum& k) {
  if (k.pi_count() > 0)
    throw DomainError("edge amplitude undefined when a component sits at pi");
  double prod = 1.0;
  for (double c : k.weights()) prod *= 0.5 * c;
  return unit_sphere_area(k.dim()) / std::sqrt(prod);
}

double leading_high_d(double threshold, double edge_slope) {
  return 1.0 / std::sqrt(-(threshold * threshold) * edge_slope);
}

double leading_coefficient(int d, const Quasimomentum& k, const QuadratureSpec& spec) {
  if (k.dim() != d) throw InvalidArgument("dimension does not match quasimomentum");
  const Regime regime = regime_of(d);
  const double mu0 = threshold_coupling(k, spec);
  switch (regime) {
    case Regime::d3:
      return 2.0 / (kPi * mu0 * mu0 * edge_amplitude(k));
    case Regime::d4:
      return 2.0 / (mu0 * mu0 * edge_amplitude(k));
    case Regime::odd_high:
    case Regime::even_high:
      return leading_high_d(mu0, green_edge_slope(k, spec));
  }
  throw InvalidArgument("unreachable regime");
}

double eigenvalue_k2_coefficient(int d, const QuadratureSpec& spec) {
  if (d < 5) throw DomainError("momentum coefficient requires dimension >= 5");
  const double a2 = edge_curvature(d, spec);
  const double slope = green_edge_slope(Quasimomentum::zero(d), spec);
  return -a2 / (2.0 * slope) - 0.25;
}

ExpansionVariables expansion_variables(int d, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidArgument("coupling excess must be positive and finite");
  ExpansionVariables v{lambda, nan_value(), nan_value(), nan_value()};
  switch (regime_of(d)) {
    case Regime::d3:
    case Regime::odd_high:
      break;
    case Regime::d4: {
      if (lambda >= std::exp(-1.0))
        throw DomainError("log-corrected scale variables need lambda < 1/e");
      const double big_l = -std::log(lambda);
      v.sigma = lambda / big_l;
      v.tau = 1.0 / big_l;
      v.omega = std::log(big_l) / big_l;
      break;
    }
    case Regime::even_high: {
      v.sigma = std::sqrt(lambda);
      v.tau = v.sigma * std::log(v.sigma);
      break;
    }
  }
  return v;
}

std::vector<ScanPoint> scan_coupling(const Quasimomentum& k, const std::vector<double>& s_grid,
                                     const QuadratureSpec& spec) {
  if (s_grid.empty()) throw InvalidArgument("empty offset grid");
  for (double s : s_grid)
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("offsets must be positive and finite");
  const double mu0 = threshold_coupling(k, spec);
  std::vector<ScanPoint> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    const double g = green_edge_gap(k, s, spec);
    // Exact rearrangement of 1/nu(s) - 1/nu(0); subtracting the two
    // couplings directly would lose every significant digit at small s.
    const double lambda = mu0 * mu0 * g / (1.0 - mu0 * g);
    out.push_back({s, lambda});
  }
  return out;
}

double offset_of_lambda(const Quasimomentum& k, double lambda, const QuadratureSpec& spec) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidArgument("coupling excess must be positive and finite");
  const double mu0 = threshold_coupling(k, spec);
  const double target = lambda / (mu0 * mu0 + mu0 * lambda);
  auto gap = [&](double s) { return green_edge_gap(k, s, spec); };
  return solve_gap_root(gap, target, 1.0);
}

double threshold_eigenvalue_shift(const Quasimomentum& k, const QuadratureSpec& spec) {
  // At coupling 1/nu_0(0) the secular condition nu_K(s) = nu_0(0) reads
  // gap(K, s) = nu_K(0) - nu_0(0); both sides stay cancellation-free.
  const double target = green_edge_diff(k, spec);
  if (target <= 0.0) return band_max_drop(k);
  auto gap = [&](double s) { return green_edge_gap(k, s, spec); };
  return band_max_drop(k) + solve_gap_root(gap, target, 1.0);
}

FitReport fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw InvalidArgument("power-law fit needs at least three points");
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    if (!(p.first > 0.0) || !(p.second > 0.0) || !std::isfinite(p.first) || !std::isfinite(p.second))
      throw InvalidArgument("power-law fit needs positive finite samples");
    sx += std::log(p.first);
    sy += std::log(p.second);
  }
  const double mx = sx / points.size();
  const double my = sy / points.size();
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = std::log(p.first) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.second) - my);
  }
  if (sxx == 0.0) throw InvalidArgument("power-law fit needs at least two distinct abscissae");

  FitReport fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  fit.window_min = std::numeric_limits<double>::infinity();
  fit.window_max = 0.0;
  fit.max_rel_dev = 0.0;
  for (const auto& p : points) {
    fit.window_min = std::min(fit.window_min, p.first);
    fit.window_max = std::max(fit.window_max, p.first);
    const double model = fit.prefactor * std::pow(p.first, fit.exponent);
    fit.max_rel_dev = std::max(fit.max_rel_dev, std::abs(p.second / model - 1.0));
  }
  return fit;
}

bool VerifyReport::pass() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<double> default_coupling_grid(int d, bool coarse) {
  if (d == 3) return coarse ? log_spaced(1e-10, 1e-4, 17) : log_spaced(1e-12, 1e-4, 33);
  return coarse ? log_spaced(1e-3, 1.0, 17) : log_spaced(1e-8, 1e-2, 33);
}

VerifyReport verify_coupling_asymptotics(int d, const Quasimomentum& k, const QuadratureSpec& spec,
                                         bool coarse) {
  if (k.dim() != d) throw InvalidArgument("dimension does not match quasimomentum");
  const Regime regime = regime_of(d);
  VerifyReport report;

  if (regime == Regime::d4) {
    // Pure power-law fitting cannot see through the log factor at reachable
    // offsets; instead pin the scale variable and watch the ratio approach
    // its predicted constant from above as the coupling excess shrinks.
    const double c_pred = leading_coefficient(d, k, spec);
    const double targets[3] = {1e-4, 1e-6, 1e-8};
    const double tols[3] = {1.0, 1.0, 0.15};
    double devs[3];
    for (int i = 0; i < 3; ++i) {
      const double lambda = targets[i];
      const double s = offset_of_lambda(k, lambda, spec);
      const double sigma = expansion_variables(d, lambda).sigma;
      char name[64];
      std::snprintf(name, sizeof name, "ratio_lambda_%.0e", lambda);
      report.checks.push_back(make_check(name, s / sigma, c_pred, tols[i]));
      devs[i] = std::abs(report.checks.back().rel_dev);
    }
    Check mono;
    mono.name = "ratio_deviation_shrinks";
    mono.measured = std::max(devs[1] - devs[0], devs[2] - devs[1]);
    mono.predicted = 0.0;
    mono.rel_dev = mono.measured;
    mono.tol = 0.0;
    mono.pass = mono.measured < 0.0;
    report.checks.push_back(mono);
    return report;
  }

  const double p_pred = regime == Regime::d3 ? 2.0 : 1.0;
  const double c1 = leading_coefficient(d, k, spec);
  const double c_pred = c1 * c1;
  double tol_exp = 0.005, tol_pref = 0.02;
  if (regime == Regime::even_high) {
    tol_exp = 0.03;
    tol_pref = 0.10;
  }

  const std::vector<ScanPoint> scan = scan_coupling(k, default_coupling_grid(d, coarse), spec);
  const double lambda_min = scan.front().lambda;
  std::vector<std::pair<double, double>> window;
  for (const ScanPoint& pt : scan)
    if (pt.lambda <= lambda_min * 1e3) window.emplace_back(pt.lambda, pt.s);
  for (std::size_t i = window.size(); i < 3; ++i) window.emplace_back(scan[i].lambda, scan[i].s);

  const FitReport fit = fit_power_law(window);
  report.checks.push_back(make_check("exponent", fit.exponent, p_pred, tol_exp));
  // Prefactor with the exponent pinned at its predicted value; a free
  // intercept amplifies the next-order correction by the lever arm from
  // the window down to lambda = 1.
  const double c_hat = scan.front().s / std::pow(lambda_min, p_pred);
  report.checks.push_back(make_check("prefactor", c_hat, c_pred, tol_pref));
  return report;
}

VerifyReport verify_momentum_asymptotics(int d, const std::vector<double>& direction,
                                         const QuadratureSpec& spec, bool coarse) {
  if (static_cast<int>(direction.size()) != d)
    throw InvalidArgument("direction length does not match dimension");
  double norm = 0.0;
  for (double x : direction) {
    if (!std::isfinite(x)) throw InvalidArgument("direction must be finite");
    norm += x * x;
  }
  norm = std::sqrt(norm);
  if (norm == 0.0) throw InvalidArgument("direction must be nonzero");
  regime_of(d);

  const int j_lo = 2;
  const int j_hi = coarse ? 8 : 10;
  std::vector<double> kappas, ratios;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double kappa = std::ldexp(1.0, -j);
    std::vector<double> comps(direction);
    for (double& x : comps) x *= kappa / norm;
    const Quasimomentum k(comps);
    const double y = threshold_eigenvalue_shift(k, spec);
    kappas.push_back(kappa);
    ratios.push_back(y / (kappa * kappa));
  }

  const std::size_t n = ratios.size();
  const double r[3] = {ratios[n - 3], ratios[n - 2], ratios[n - 1]};
  double limit;
  if (d == 4) {
    limit = reciprocal_log_limit(2.0 * std::log(2.0), r);
  } else {
    double u[3];
    for (int i = 0; i < 3; ++i) {
      const double kap = kappas[n - 3 + i];
      u[i] = d == 3 ? kap * kap : kap;
    }
    limit = quadratic_limit(u, r);
  }

  double predicted, tol;
  if (d <= 4) {
    predicted = -0.25;
    tol = d == 3 ? 0.005 : 0.05;
  } else {
    predicted = eigenvalue_k2_coefficient(d, spec);
    tol = 0.02;
  }
  VerifyReport report;
  report.checks.push_back(make_check("k2_coefficient", limit, predicted, tol));
  return report;
}

}  // namespace latband

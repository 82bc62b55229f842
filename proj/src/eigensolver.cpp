#include "eigensolver.hpp"

#include <cmath>

#include "errors.hpp"

namespace latband {

namespace {

double pow_2pi(int d) {
  double p = 1.0;
  for (int i = 0; i < d; ++i) p *= 2.0 * 3.14159265358979323846;
  return p;
}

}  // namespace

BoundState solve_bound_state(double mu, const Quasimomentum& K,
                             const QuadratureSpec& spec, double tol) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("solve: need mu > 0");
  if (!(tol > 0.0)) throw InvalidArgument("solve: need tol > 0");

  if (K.effective_dim() >= 3) {
    double mu0 = threshold_coupling(K, spec);
    if (mu <= mu0)
      throw NoBoundState("solve: coupling at or below threshold, no eigenvalue above the band",
                         mu0);
  }

  // The determinant needs the kernel integral about an order tighter than
  // the residual target.
  QuadratureSpec inner = spec;
  inner.rel_tol = std::min(spec.rel_tol, 0.1 * tol);

  int evals = 0;
  auto delta = [&](double s) {
    ++evals;
    return 1.0 - mu * green_integral(K, s, inner);
  };

  // nu(s) < (2 pi)^d / s makes this endpoint positive unconditionally.
  double s_hi = 2.0 * mu * pow_2pi(K.dim());
  double f_hi = delta(s_hi);

  double s_lo = s_hi;
  double f_lo = f_hi;
  for (int i = 0; i < 300 && f_lo >= 0.0; ++i) {
    s_lo /= 16.0;
    if (s_lo < 1e-290)
      throw ConvergenceError("solve: no sign change found down to s = 1e-290", f_lo);
    f_lo = delta(s_lo);
  }
  if (f_lo >= 0.0) throw ConvergenceError("solve: bracketing failed", f_lo);

  BoundState out{};
  out.bracket_lo = s_lo;
  out.bracket_hi = s_hi;

  // Bisection in u = ln s until the bracket is narrow, then secant steps in
  // u, falling back to bisection whenever a step escapes the bracket.
  double u_lo = std::log(s_lo), u_hi = std::log(s_hi);
  while (u_hi - u_lo > 0.5) {
    double u = 0.5 * (u_lo + u_hi);
    double f = delta(std::exp(u));
    if (f < 0.0) {
      u_lo = u;
      f_lo = f;
    } else {
      u_hi = u;
      f_hi = f;
    }
  }

  double u = 0.5 * (u_lo + u_hi);
  double f = delta(std::exp(u));
  for (int i = 0; i < 200; ++i) {
    if (std::abs(f) <= tol) {
      out.z = spectral_window(K).e_max + std::exp(u);
      out.s = std::exp(u);
      out.residual = std::abs(f);
      out.iterations = evals;
      return out;
    }
    if (f < 0.0) {
      u_lo = u;
      f_lo = f;
    } else {
      u_hi = u;
      f_hi = f;
    }
    double step = f * (u_hi - u_lo) / (f_hi - f_lo);
    double u_next = u - step;
    if (!(u_next > u_lo) || !(u_next < u_hi)) u_next = 0.5 * (u_lo + u_hi);
    u = u_next;
    f = delta(std::exp(u));
  }
  throw ConvergenceError("solve: residual stalled above tolerance", std::abs(f));
}

double coupling_of_offset(const Quasimomentum& K, double s, const QuadratureSpec& spec) {
  if (!(s > 0.0)) throw InvalidArgument("coupling_of_offset: need s > 0");
  return 1.0 / green_integral(K, s, spec);
}

}  // namespace latband

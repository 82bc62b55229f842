#pragma once

#include "dispersion.hpp"

namespace latband {

// Knobs for the integral evaluators.  The Laplace-axis quadrature is the
// workhorse: Gauss panels up to the point where every Bessel argument has
// reached `laplace_cutoff`, then an analytic tail with `tail_terms` terms of
// the large-argument expansion.  `points_per_axis` and `levels` only steer
// grid-based cross-check routes.
struct QuadratureSpec {
  int points_per_axis = 64;
  int levels = 2;
  double rel_tol = 1e-8;
  int laplace_nodes = 64;
  double laplace_cutoff = 30.0;
  int tail_terms = 12;
};

// Integral of the resolvent kernel over the torus at energy offset s above
// the band maximum:  integral dq / (s + sum_j c_j (1 - cos x_j)), with plain
// Lebesgue measure on (-pi, pi]^d.  Requires s > 0.
double green_integral(const Quasimomentum& K, double s, const QuadratureSpec& spec = {});

// Value at s = 0.  Finite only when at least three axes are active.
double green_edge(const Quasimomentum& K, const QuadratureSpec& spec = {});

// green_edge(K) - green_integral(K, s), evaluated through a difference
// integrand so the result stays accurate when s is many orders below 1.
double green_edge_gap(const Quasimomentum& K, double s, const QuadratureSpec& spec = {});

// green_edge(K) - green_edge(0), again as one integral of a difference, so
// tiny |K| does not lose everything to cancellation.
double green_edge_diff(const Quasimomentum& K, const QuadratureSpec& spec = {});

// d/dz of the edge value (negative); diverges unless five axes are active.
double green_edge_slope(const Quasimomentum& K, const QuadratureSpec& spec = {});

// Coupling at which a bound state first detaches: 1 / green_edge(K).
double threshold_coupling(const Quasimomentum& K, const QuadratureSpec& spec = {});

// 1 - mu * green_integral(K, s); its zero in s locates the bound state.
double fredholm_determinant(double mu, const Quasimomentum& K, double s,
                            const QuadratureSpec& spec = {});

// Second derivative of the edge value along one momentum axis at K = 0,
// via a symmetric difference of edge values plus one Richardson step.
double edge_curvature(int d, const QuadratureSpec& spec = {});

}  // namespace latband

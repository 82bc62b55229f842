#pragma once

#include <vector>

#include "dispersion.hpp"

namespace latband {

// Momentum grid with N points per axis at q_i = -pi + 2pi(i + 1/2)/N.
// The half-cell shift keeps every node strictly away from the band maximum,
// so the discrete sums below never divide by zero.
struct FiniteGrid {
  explicit FiniteGrid(int n);
  int n;
  double h() const;
  // Positive-half nodes pi(2i+1)/N, i = 0..N/2-1; the full grid is their
  // sign-symmetric closure.
  std::vector<double> half_nodes() const;
};

// Riemann sum h^d sum_i 1/(s + sum_j c_j (1 - cos x_ij)).  Folded over the
// sign symmetry of every axis and accumulated in lexicographic order with
// compensated summation, so the value is bit-reproducible.
double grid_green_integral(const Quasimomentum& K, double s, const FiniteGrid& grid);

// Largest eigenvalue of the finite system diag(E) + mu h^d (all-ones): the
// unique root z of 1 = mu * nu_N(z) above the top grid energy.
double grid_eigenvalue(double mu, const Quasimomentum& K, const FiniteGrid& grid);

// Discrete companion of the edge slope at K = 0: h^d sum_i 1/(sum_j 2(1 -
// cos x_ij))^2, folded over both sign symmetry and coordinate ordering
// (multiset enumeration), which keeps d = 5, 6 grids affordable.
double grid_edge_slope_sum(int d, int n);

}  // namespace latband

#pragma once

#include "dispersion.hpp"
#include "green.hpp"

namespace latband {

// Bound state of the pair above the band, located as the zero of the
// Fredholm determinant in s = z - e_max(K).
struct BoundState {
  double z;
  double s;
  double residual;     // |determinant| at the accepted root
  double bracket_lo;   // s-bracket that contained the root
  double bracket_hi;
  int iterations;      // determinant evaluations spent
};

// Unique eigenvalue above the band for coupling mu.  Throws NoBoundState
// (carrying the threshold) when mu is at or below threshold on a lattice
// with at least three active axes.
BoundState solve_bound_state(double mu, const Quasimomentum& K,
                             const QuadratureSpec& spec = {}, double tol = 1e-12);

// Inverse map: the coupling whose bound state sits at offset s, i.e.
// 1 / green_integral(K, s).  Strictly increasing in s.
double coupling_of_offset(const Quasimomentum& K, double s,
                          const QuadratureSpec& spec = {});

}  // namespace latband

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "dispersion.hpp"
#include "eigensolver.hpp"
#include "errors.hpp"
#include "green.hpp"
#include "lattice.hpp"

using namespace latband;

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel(double got, double want) { return std::abs(got / want - 1.0); }

QuadratureSpec tight() {
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  return spec;
}

}  // namespace

TEST_CASE("single axis at coupling 1/pi lands on the algebraic root") {
  // There the secular equation reduces to s^2 + 4s = 4, so the eigenvalue
  // sits at z = 4 + (2 sqrt(2) - 2) = 2 + 2 sqrt(2).
  const BoundState bs = solve_bound_state(1.0 / kPi, Quasimomentum::zero(1), tight());
  const double s_exact = 2.0 * std::sqrt(2.0) - 2.0;
  CHECK(rel(bs.s, s_exact) < 1e-10);
  CHECK(rel(bs.z, 2.0 + 2.0 * std::sqrt(2.0)) < 1e-10);
  CHECK(bs.bracket_lo <= bs.s);
  CHECK(bs.s <= bs.bracket_hi);
  CHECK(std::abs(bs.residual) < 1e-9);

  // And the inverse map recovers the coupling from the offset.
  CHECK(rel(coupling_of_offset(Quasimomentum::zero(1), s_exact, tight()), 1.0 / kPi) < 1e-12);
}

TEST_CASE("below threshold there is no state, and the threshold is reported") {
  const Quasimomentum k = Quasimomentum::zero(3);
  const double mu0 = threshold_coupling(k, tight());
  bool thrown = false;
  try {
    solve_bound_state(0.5 * mu0, k, tight());
  } catch (const NoBoundState& e) {
    thrown = true;
    CHECK(rel(e.threshold, mu0) < 1e-8);
  }
  CHECK(thrown);
  CHECK_THROWS_AS(solve_bound_state(mu0, k, tight()), NoBoundState);
}

TEST_CASE("weak coupling binds whenever the edge integral diverges") {
  for (int d : {1, 2}) {
    const BoundState bs = solve_bound_state(1e-3, Quasimomentum::zero(d));
    CHECK(bs.s > 0.0);
  }
  // A pi component knocks out an axis: d = 3 with one frozen axis behaves
  // like two, so arbitrarily small coupling still binds.
  const BoundState bs = solve_bound_state(1e-3, Quasimomentum({kPi, 0.2, 0.1}));
  CHECK(bs.s > 0.0);
}

TEST_CASE("offset round-trips through the coupling map") {
  for (const auto& comps : {std::vector<double>{0.0, 0.0, 0.0},
                            std::vector<double>{0.3, 0.2, 0.1}}) {
    const Quasimomentum k(comps);
    for (double s : {1e-4, 1e-2, 1.0}) {
      const double mu = coupling_of_offset(k, s, tight());
      // At s = 1e-4 the determinant's slope amplifies residual into offset
      // error by roughly a factor 500, so solve beyond the default residual.
      const BoundState bs = solve_bound_state(mu, k, tight(), 1e-13);
      CHECK(rel(bs.s, s) < 1e-10);
    }
  }
}

TEST_CASE("determinant has exactly one root above the band") {
  const Quasimomentum k = Quasimomentum::zero(3);
  const double mu = 2.0 * threshold_coupling(k);
  int sign_changes = 0;
  double prev = fredholm_determinant(mu, k, 1e-12);
  for (int i = 1; i < 1000; ++i) {
    const double s = 1e-12 * std::pow(1e15, i / 999.0);
    const double cur = fredholm_determinant(mu, k, s);
    if ((prev < 0.0) != (cur < 0.0)) ++sign_changes;
    prev = cur;
  }
  CHECK(sign_changes == 1);
}

TEST_CASE("offset grows with coupling and vanishes at threshold") {
  const Quasimomentum k = Quasimomentum::zero(3);
  const double mu0 = threshold_coupling(k);
  double prev = 0.0;
  for (double f : {1.0 + 1e-6, 1.0 + 1e-4, 2.0, 3.0, 5.0}) {
    const double s = solve_bound_state(f * mu0, k).s;
    CHECK(s > prev);
    prev = s;
  }
  // Just above threshold the offset is already small (quadratically so in
  // the excess coupling for three active axes).
  CHECK(solve_bound_state(mu0 * (1.0 + 1e-6), k).s < 1e-2);
}

TEST_CASE("eigenvalue is invariant under axis permutation and reflection") {
  const Quasimomentum a({0.7, -0.3, 0.15});
  const Quasimomentum b({-0.15, 0.7, 0.3});
  const BoundState ba = solve_bound_state(0.05, a);
  const BoundState bb = solve_bound_state(0.05, b);
  CHECK(ba.z == bb.z);
  CHECK(ba.s == bb.s);
}

TEST_CASE("continuum solve against the finite-grid secular root") {
  // Double the threshold coupling and compare with grid roots extrapolated
  // across N = 32, 64, 128.
  for (const auto& comps : {std::vector<double>{0.0, 0.0, 0.0},
                            std::vector<double>{0.3, 0.2, 0.1}}) {
    const Quasimomentum k(comps);
    const double mu = 2.0 * threshold_coupling(k, tight());
    const double z = solve_bound_state(mu, k, tight()).z;
    const double v1 = grid_eigenvalue(mu, k, FiniteGrid(32));
    const double v2 = grid_eigenvalue(mu, k, FiniteGrid(64));
    const double v3 = grid_eigenvalue(mu, k, FiniteGrid(128));
    // Aitken acceleration, skipped once the sequence has flatlined at
    // rounding level.
    const double denom = (v2 - v1) - (v3 - v2);
    double z_grid = v3;
    if (std::abs(v3 - v2) > 1e-12 * std::abs(v3) && denom != 0.0) {
      z_grid = v3 + (v3 - v2) * (v3 - v2) / denom;
    }
    CHECK(std::abs(z - z_grid) < 1e-4);
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(solve_bound_state(0.0, Quasimomentum::zero(3)), InvalidArgument);
  CHECK_THROWS_AS(solve_bound_state(-1.0, Quasimomentum::zero(3)), InvalidArgument);
  CHECK_THROWS_AS(solve_bound_state(0.5, Quasimomentum::zero(3), QuadratureSpec{}, 0.0),
                  InvalidArgument);
  CHECK_THROWS_AS(coupling_of_offset(Quasimomentum::zero(3), 0.0), InvalidArgument);
  CHECK_THROWS_AS(coupling_of_offset(Quasimomentum::zero(3), -2.0), InvalidArgument);
}

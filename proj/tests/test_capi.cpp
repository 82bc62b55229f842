#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>

#include "latband.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel(double got, double want) { return std::abs(got / want - 1.0); }

}  // namespace

TEST_CASE("lifecycle and version") {
  latband_model* m = latband_model_create(3, nullptr);
  REQUIRE(m != nullptr);
  latband_model_free(m);
  latband_model_free(nullptr);  // harmless

  const char* v = latband_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("creation failures set the error string") {
  CHECK(latband_model_create(0, nullptr) == nullptr);
  const char* err = latband_last_error();
  REQUIRE(err != nullptr);
  CHECK(std::strlen(err) > 0);

  const double bad[3] = {0.1, NAN, 0.3};
  CHECK(latband_model_create(3, bad) == nullptr);
}

TEST_CASE("null handles are rejected, not dereferenced") {
  double out = 0.0;
  CHECK(latband_nu(nullptr, 1.0, &out) == LATBAND_EINVAL);
  CHECK(latband_spectrum(nullptr, &out, nullptr, nullptr, nullptr) == LATBAND_EINVAL);
  latband_model* m = latband_model_create(3, nullptr);
  REQUIRE(m != nullptr);
  CHECK(latband_nu(m, 1.0, nullptr) == LATBAND_EINVAL);
  latband_model_free(m);
}

TEST_CASE("spectrum of the zero-momentum fiber") {
  latband_model* m = latband_model_create(3, nullptr);
  REQUIRE(m != nullptr);
  double e_min = -1.0, e_max = -1.0;
  int pi_class = -1, d_eff = -1;
  CHECK(latband_spectrum(m, &e_min, &e_max, &pi_class, &d_eff) == LATBAND_OK);
  CHECK(e_min == 0.0);
  CHECK(e_max == 12.0);
  CHECK(pi_class == 0);
  CHECK(d_eff == 3);
  latband_model_free(m);

  const double k[3] = {kPi, 0.2, 0.1};
  m = latband_model_create(3, k);
  REQUIRE(m != nullptr);
  CHECK(latband_spectrum(m, nullptr, nullptr, &pi_class, &d_eff) == LATBAND_OK);
  CHECK(pi_class == 1);
  CHECK(d_eff == 2);
  latband_model_free(m);
}

TEST_CASE("kernel integral, threshold, determinant") {
  latband_model* m = latband_model_create(3, nullptr);
  REQUIRE(m != nullptr);
  REQUIRE(latband_set_rel_tol(m, 1e-12) == LATBAND_OK);

  double nu = 0.0;
  CHECK(latband_nu(m, 1.0, &nu) == LATBAND_OK);
  CHECK(rel(nu, 42.298466710593558897) < 1e-11);

  double edge = 0.0;
  CHECK(latband_nu_edge(m, &edge) == LATBAND_OK);
  CHECK(rel(edge, 62.689980938954292916) < 1e-11);

  double gap = 0.0;
  CHECK(latband_nu_gap(m, 1.0, &gap) == LATBAND_OK);
  CHECK(rel(gap, edge - nu) < 1e-9);

  double mu0 = 0.0;
  CHECK(latband_threshold(m, &mu0) == LATBAND_OK);
  CHECK(rel(mu0, 1.0 / edge) < 1e-14);

  double det = 0.0;
  CHECK(latband_determinant(m, mu0, 1.0, &det) == LATBAND_OK);
  CHECK(rel(det, 1.0 - mu0 * nu) < 1e-10);

  CHECK(latband_nu(m, -1.0, &nu) == LATBAND_EINVAL);
  CHECK(latband_set_rel_tol(m, 0.0) == LATBAND_EINVAL);
  CHECK(latband_set_rel_tol(m, 2.0) == LATBAND_EINVAL);
  latband_model_free(m);
}

TEST_CASE("edge integral divergence surfaces as a domain error") {
  latband_model* m = latband_model_create(2, nullptr);
  REQUIRE(m != nullptr);
  double out = 0.0;
  CHECK(latband_nu_edge(m, &out) == LATBAND_EDOMAIN);
  CHECK(latband_threshold(m, &out) == LATBAND_EDOMAIN);
  const char* err = latband_last_error();
  REQUIRE(err != nullptr);
  CHECK(std::strstr(err, "edge integral diverges") != nullptr);
  latband_model_free(m);
}

TEST_CASE("bound-state solve round trip") {
  latband_model* m = latband_model_create(1, nullptr);
  REQUIRE(m != nullptr);
  REQUIRE(latband_set_rel_tol(m, 1e-12) == LATBAND_OK);

  latband_bound_state bs;
  CHECK(latband_solve(m, 1.0 / kPi, 0.0, &bs) == LATBAND_OK);
  CHECK(bs.bound == 1);
  CHECK(rel(bs.z, 2.0 + 2.0 * std::sqrt(2.0)) < 1e-10);
  CHECK(rel(bs.s, 2.0 * std::sqrt(2.0) - 2.0) < 1e-10);

  double mu = 0.0;
  CHECK(latband_coupling_of_offset(m, bs.s, &mu) == LATBAND_OK);
  CHECK(rel(mu, 1.0 / kPi) < 1e-9);

  CHECK(latband_solve(m, -1.0, 0.0, &bs) == LATBAND_EINVAL);
  latband_model_free(m);
}

TEST_CASE("below threshold reports the threshold instead of a state") {
  latband_model* m = latband_model_create(3, nullptr);
  REQUIRE(m != nullptr);
  double mu0 = 0.0;
  REQUIRE(latband_threshold(m, &mu0) == LATBAND_OK);

  latband_bound_state bs;
  CHECK(latband_solve(m, 0.5 * mu0, 0.0, &bs) == LATBAND_ENOBOUND);
  CHECK(bs.bound == 0);
  CHECK(rel(bs.mu0, mu0) < 1e-12);
  latband_model_free(m);
}

TEST_CASE("scan, shift, and expansion variables") {
  latband_model* m = latband_model_create(3, nullptr);
  REQUIRE(m != nullptr);

  const double grid[3] = {1e-8, 1e-6, 1e-4};
  double lambda[3] = {0.0, 0.0, 0.0};
  CHECK(latband_scan_coupling(m, grid, 3, lambda) == LATBAND_OK);
  CHECK(lambda[0] > 0.0);
  CHECK(lambda[0] < lambda[1]);
  CHECK(lambda[1] < lambda[2]);

  double sigma = 0.0, tau = 0.0, omega = 0.0;
  CHECK(latband_expansion_variables(4, 1e-4, &sigma, &tau, &omega) == LATBAND_OK);
  const double big_l = -std::log(1e-4);
  CHECK(rel(sigma, 1e-4 / big_l) < 1e-14);
  CHECK(latband_expansion_variables(4, 0.9, &sigma, &tau, &omega) == LATBAND_EDOMAIN);

  latband_model_free(m);

  const double k[3] = {0.25, 0.0, 0.0};
  m = latband_model_create(3, k);
  REQUIRE(m != nullptr);
  double shift = 0.0;
  CHECK(latband_threshold_shift(m, &shift) == LATBAND_OK);
  CHECK(shift < 0.0);
  CHECK(std::abs(shift / (0.25 * 0.25) + 0.25) < 0.05);
  latband_model_free(m);
}

TEST_CASE("asymptotic constants") {
  double area = 0.0;
  CHECK(latband_unit_sphere_area(3, &area) == LATBAND_OK);
  CHECK(rel(area, 4.0 * kPi) < 1e-14);
  CHECK(latband_unit_sphere_area(1, &area) == LATBAND_EINVAL);

  latband_model* m = latband_model_create(3, nullptr);
  REQUIRE(m != nullptr);
  double amp = 0.0;
  CHECK(latband_edge_amplitude(m, &amp) == LATBAND_OK);
  CHECK(rel(amp, 4.0 * kPi) < 1e-14);
  double c1 = 0.0;
  CHECK(latband_leading_coefficient(m, &c1) == LATBAND_OK);
  CHECK(rel(c1, 199.097833632150174) < 1e-7);
  latband_model_free(m);

  double alpha = 0.0;
  CHECK(latband_k2_coefficient(5, &alpha) == LATBAND_OK);
  CHECK(std::abs(alpha + 0.100601664124297649) < 1e-6);
  CHECK(latband_k2_coefficient(4, &alpha) == LATBAND_EDOMAIN);
}

TEST_CASE("grid oracles through the C surface") {
  latband_model* m = latband_model_create(1, nullptr);
  REQUIRE(m != nullptr);
  double nu = 0.0;
  CHECK(latband_grid_nu(m, 1.0, 2, &nu) == LATBAND_OK);
  CHECK(rel(nu, 2.0 * kPi / 3.0) < 1e-14);
  double z = 0.0;
  CHECK(latband_grid_eigenvalue(m, 0.5, 2, &z) == LATBAND_OK);
  CHECK(rel(z, 2.0 + kPi) < 1e-13);
  CHECK(latband_grid_nu(m, 1.0, 3, &nu) == LATBAND_EINVAL);
  latband_model_free(m);
}

TEST_CASE("verification reports cross the boundary intact") {
  latband_model* m = latband_model_create(3, nullptr);
  REQUIRE(m != nullptr);
  latband_check checks[8];
  int count = -1;
  CHECK(latband_verify_coupling(m, 1, checks, 8, &count) == LATBAND_OK);
  REQUIRE(count == 2);
  CHECK(std::strcmp(checks[0].name, "exponent") == 0);
  CHECK(checks[0].pass == 1);
  CHECK(checks[1].pass == 1);
  latband_model_free(m);

  const double dir[3] = {1.0, 0.0, 0.0};
  count = -1;
  CHECK(latband_verify_momentum(3, dir, 1, checks, 8, &count) == LATBAND_OK);
  REQUIRE(count == 1);
  CHECK(std::strcmp(checks[0].name, "k2_coefficient") == 0);
  CHECK(checks[0].pass == 1);
}

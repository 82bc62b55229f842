#include "latband.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "dispersion.hpp"
#include "eigensolver.hpp"
#include "errors.hpp"
#include "green.hpp"
#include "lattice.hpp"

struct latband_model {
  latband::Quasimomentum k;
  latband::QuadratureSpec spec;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
int guarded(Fn&& fn) noexcept {
  g_last_error.clear();
  try {
    return fn();
  } catch (const latband::NoBoundState& e) {
    g_last_error = e.what();
    return LATBAND_ENOBOUND;
  } catch (const latband::ConvergenceError& e) {
    g_last_error = e.what();
    return LATBAND_ECONVERGENCE;
  } catch (const latband::DomainError& e) {
    g_last_error = e.what();
    return LATBAND_EDOMAIN;
  } catch (const latband::InvalidArgument& e) {
    g_last_error = e.what();
    return LATBAND_EINVAL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LATBAND_EINTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LATBAND_EINTERNAL;
  }
}

int require(bool ok, const char* message) {
  if (ok) return LATBAND_OK;
  g_last_error = message;
  return LATBAND_EINVAL;
}

void copy_checks(const latband::VerifyReport& report, latband_check* out, int cap, int* count) {
  if (count) *count = static_cast<int>(report.checks.size());
  if (!out) return;
  const int n = std::min<int>(cap, static_cast<int>(report.checks.size()));
  for (int i = 0; i < n; ++i) {
    const latband::Check& c = report.checks[i];
    std::snprintf(out[i].name, sizeof out[i].name, "%s", c.name.c_str());
    out[i].measured = c.measured;
    out[i].predicted = c.predicted;
    out[i].rel_dev = c.rel_dev;
    out[i].tol = c.tol;
    out[i].pass = c.pass ? 1 : 0;
  }
}

}  // namespace

extern "C" {

latband_model* latband_model_create(int dim, const double* k) {
  g_last_error.clear();
  try {
    if (dim < 1) {
      g_last_error = "dimension must be at least 1";
      return nullptr;
    }
    std::vector<double> comps(static_cast<std::size_t>(dim), 0.0);
    if (k) comps.assign(k, k + dim);
    return new latband_model{latband::Quasimomentum(std::move(comps)), latband::QuadratureSpec{}};
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

void latband_model_free(latband_model* m) { delete m; }

int latband_set_rel_tol(latband_model* m, double rel_tol) {
  if (int rc = require(m != nullptr, "null model")) return rc;
  if (int rc = require(rel_tol > 0.0 && rel_tol < 1.0, "rel_tol must lie in (0, 1)")) return rc;
  m->spec.rel_tol = rel_tol;
  return LATBAND_OK;
}

const char* latband_last_error(void) { return g_last_error.c_str(); }

const char* latband_version(void) { return "1.0.0"; }

int latband_spectrum(const latband_model* m, double* e_min, double* e_max, int* pi_class,
                     int* d_eff) {
  if (int rc = require(m != nullptr, "null model")) return rc;
  return guarded([&] {
    const latband::SpectralWindow window = latband::spectral_window(m->k);
    if (e_min) *e_min = window.e_min;
    if (e_max) *e_max = window.e_max;
    if (pi_class) *pi_class = m->k.pi_count();
    if (d_eff) *d_eff = m->k.effective_dim();
    return LATBAND_OK;
  });
}

int latband_nu(const latband_model* m, double s, double* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return guarded([&] {
    *out = latband::green_integral(m->k, s, m->spec);
    return LATBAND_OK;
  });
}

int latband_nu_edge(const latband_model* m, double* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return guarded([&] {
    *out = latband::green_edge(m->k, m->spec);
    return LATBAND_OK;
  });
}

int latband_nu_gap(const latband_model* m, double s, double* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return guarded([&] {
    *out = latband::green_edge_gap(m->k, s, m->spec);
    return LATBAND_OK;
  });
}

int latband_threshold(const latband_model* m, double* mu0) {
  if (int rc = require(m && mu0, "null argument")) return rc;
  return guarded([&] {
    *mu0 = latband::threshold_coupling(m->k, m->spec);
    return LATBAND_OK;
  });
}

int latband_determinant(const latband_model* m, double mu, double s, double* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return guarded([&] {
    *out = latband::fredholm_determinant(mu, m->k, s, m->spec);
    return LATBAND_OK;
  });
}

int latband_coupling_of_offset(const latband_model* m, double s, double* mu) {
  if (int rc = require(m && mu, "null argument")) return rc;
  return guarded([&] {
    *mu = latband::coupling_of_offset(m->k, s, m->spec);
    return LATBAND_OK;
  });
}

int latband_solve(const latband_model* m, double mu, double tol, latband_bound_state* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  out->bound = 0;
  out->z = std::numeric_limits<double>::quiet_NaN();
  out->s = std::numeric_limits<double>::quiet_NaN();
  out->mu0 = std::numeric_limits<double>::quiet_NaN();
  out->residual = std::numeric_limits<double>::quiet_NaN();
  out->iterations = 0;
  return guarded([&] {
    try {
      const latband::BoundState state =
          latband::solve_bound_state(mu, m->k, m->spec, tol > 0.0 ? tol : 1e-12);
      out->bound = 1;
      out->z = state.z;
      out->s = state.s;
      out->residual = state.residual;
      out->iterations = state.iterations;
      if (m->k.effective_dim() >= 3)
        out->mu0 = latband::threshold_coupling(m->k, m->spec);
      return LATBAND_OK;
    } catch (const latband::NoBoundState& e) {
      out->bound = 0;
      out->mu0 = e.threshold;
      g_last_error = e.what();
      return LATBAND_ENOBOUND;
    }
  });
}

int latband_expansion_variables(int dim, double lambda, double* sigma, double* tau, double* omega) {
  return guarded([&] {
    const latband::ExpansionVariables v = latband::expansion_variables(dim, lambda);
    if (sigma) *sigma = v.sigma;
    if (tau) *tau = v.tau;
    if (omega) *omega = v.omega;
    return LATBAND_OK;
  });
}

int latband_scan_coupling(const latband_model* m, const double* s_grid, int n, double* lambda_out) {
  if (int rc = require(m && s_grid && lambda_out, "null argument")) return rc;
  if (int rc = require(n > 0, "grid must be nonempty")) return rc;
  return guarded([&] {
    const std::vector<double> grid(s_grid, s_grid + n);
    const auto points = latband::scan_coupling(m->k, grid, m->spec);
    for (int i = 0; i < n; ++i) lambda_out[i] = points[i].lambda;
    return LATBAND_OK;
  });
}

int latband_threshold_shift(const latband_model* m, double* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return guarded([&] {
    *out = latband::threshold_eigenvalue_shift(m->k, m->spec);
    return LATBAND_OK;
  });
}

int latband_unit_sphere_area(int dim, double* out) {
  if (int rc = require(out != nullptr, "null argument")) return rc;
  return guarded([&] {
    *out = latband::unit_sphere_area(dim);
    return LATBAND_OK;
  });
}

int latband_edge_amplitude(const latband_model* m, double* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return guarded([&] {
    *out = latband::edge_amplitude(m->k);
    return LATBAND_OK;
  });
}

int latband_leading_coefficient(const latband_model* m, double* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return guarded([&] {
    *out = latband::leading_coefficient(m->k.dim(), m->k, m->spec);
    return LATBAND_OK;
  });
}

int latband_k2_coefficient(int dim, double* out) {
  if (int rc = require(out != nullptr, "null argument")) return rc;
  return guarded([&] {
    *out = latband::eigenvalue_k2_coefficient(dim);
    return LATBAND_OK;
  });
}

int latband_verify_coupling(const latband_model* m, int coarse, latband_check* out, int cap,
                            int* count) {
  if (int rc = require(m != nullptr, "null model")) return rc;
  return guarded([&] {
    const auto report =
        latband::verify_coupling_asymptotics(m->k.dim(), m->k, m->spec, coarse != 0);
    copy_checks(report, out, cap, count);
    return LATBAND_OK;
  });
}

int latband_verify_momentum(int dim, const double* direction, int coarse, latband_check* out,
                            int cap, int* count) {
  if (int rc = require(direction != nullptr, "null direction")) return rc;
  if (int rc = require(dim >= 1, "dimension must be at least 1")) return rc;
  return guarded([&] {
    const std::vector<double> dir(direction, direction + dim);
    const auto report =
        latband::verify_momentum_asymptotics(dim, dir, latband::QuadratureSpec{}, coarse != 0);
    copy_checks(report, out, cap, count);
    return LATBAND_OK;
  });
}

int latband_grid_nu(const latband_model* m, double s, int n, double* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return guarded([&] {
    *out = latband::grid_green_integral(m->k, s, latband::FiniteGrid(n));
    return LATBAND_OK;
  });
}

int latband_grid_eigenvalue(const latband_model* m, double mu, int n, double* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return guarded([&] {
    *out = latband::grid_eigenvalue(mu, m->k, latband::FiniteGrid(n));
    return LATBAND_OK;
  });
}

}  // extern "C"

/* latband: two-particle lattice band structure with a rank-one contact
 * interaction.  Plain-C surface over the C++ core: opaque handles, status
 * codes, no exceptions across the boundary.
 *
 * Every function that can fail returns one of the LATBAND_* status codes;
 * latband_last_error() describes the most recent failure on the calling
 * thread. */

#ifndef LATBAND_H
#define LATBAND_H

#ifdef __cplusplus
extern "C" {
#endif

#define LATBAND_OK 0
#define LATBAND_EINVAL 1       /* malformed argument */
#define LATBAND_EDOMAIN 2      /* valid argument outside the operation's domain */
#define LATBAND_ECONVERGENCE 3 /* requested accuracy not reached */
#define LATBAND_ENOBOUND 4     /* coupling at or below threshold: no bound state */
#define LATBAND_EINTERNAL 5

/* A model is a dimension, a total quasimomentum (canonicalized into
 * (-pi, pi]^d on creation), and quadrature settings. */
typedef struct latband_model latband_model;

/* k may be NULL for zero momentum; otherwise it must hold dim entries.
 * Returns NULL on failure (see latband_last_error). */
latband_model* latband_model_create(int dim, const double* k);
void latband_model_free(latband_model* m);

/* Relative tolerance for the band-edge integrals (default 1e-8). */
int latband_set_rel_tol(latband_model* m, double rel_tol);

const char* latband_last_error(void);
const char* latband_version(void);

/* Essential spectrum [e_min, e_max] of the fiber at this momentum, the
 * number of components pinned at pi, and the effective dimension.
 * Output pointers may be NULL when a value is not wanted. */
int latband_spectrum(const latband_model* m, double* e_min, double* e_max, int* pi_class,
                     int* d_eff);

/* Band-edge Green integral nu(K, e_max + s), s > 0. */
int latband_nu(const latband_model* m, double s, double* out);

/* Integral at the band edge itself (finite iff effective dimension >= 3). */
int latband_nu_edge(const latband_model* m, double* out);

/* Cancellation-free gap nu(K, edge) - nu(K, edge + s). */
int latband_nu_gap(const latband_model* m, double s, double* out);

/* Coupling threshold mu0(K) = 1/nu_edge. */
int latband_threshold(const latband_model* m, double* mu0);

/* Fredholm determinant 1 - mu * nu(K, e_max + s). */
int latband_determinant(const latband_model* m, double mu, double s, double* out);

/* Coupling whose bound state sits at offset s above the edge. */
int latband_coupling_of_offset(const latband_model* m, double s, double* mu);

typedef struct latband_bound_state {
  int bound;      /* 0: no bound state (mu <= mu0); fields below then hold mu0 only */
  double z;       /* eigenvalue */
  double s;       /* z - e_max */
  double mu0;     /* threshold coupling, when defined (else NaN) */
  double residual;
  int iterations;
} latband_bound_state;

/* Unique eigenvalue above the band, or LATBAND_ENOBOUND with out->bound = 0
 * and out->mu0 filled.  tol <= 0 selects the default 1e-12. */
int latband_solve(const latband_model* m, double mu, double tol, latband_bound_state* out);

/* Natural expansion variables of the near-threshold regime; entries the
 * regime does not define are set to NaN. */
int latband_expansion_variables(int dim, double lambda, double* sigma, double* tau, double* omega);

/* Coupling excess lambda(s) = coupling_of_offset - mu0 for each grid offset,
 * computed through a cancellation-free identity. */
int latband_scan_coupling(const latband_model* m, const double* s_grid, int n, double* lambda_out);

/* Eigenvalue shift z(mu0(0), K) - e_max(0) at the zero-momentum threshold. */
int latband_threshold_shift(const latband_model* m, double* out);

int latband_unit_sphere_area(int dim, double* out);
int latband_edge_amplitude(const latband_model* m, double* out);

/* Leading coefficient of the bound-state offset in the regime's natural
 * variable. */
int latband_leading_coefficient(const latband_model* m, double* out);

/* |K|^2 coefficient of the eigenvalue at threshold coupling (dim >= 5). */
int latband_k2_coefficient(int dim, double* out);

typedef struct latband_check {
  char name[64];
  double measured;
  double predicted;
  double rel_dev;
  double tol;
  int pass;
} latband_check;

/* Verification protocols.  Up to cap checks are written to out; *count
 * receives the number produced.  The status is LATBAND_OK even when
 * individual checks fail; inspect the pass flags. */
int latband_verify_coupling(const latband_model* m, int coarse, latband_check* out, int cap,
                            int* count);
int latband_verify_momentum(int dim, const double* direction, int coarse, latband_check* out,
                            int cap, int* count);

/* Finite-lattice oracles on the N^d midpoint grid (N even). */
int latband_grid_nu(const latband_model* m, double s, int n, double* out);
int latband_grid_eigenvalue(const latband_model* m, double mu, int n, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LATBAND_H */

/* C API for the transversal Dirac operator workbench.
 *
 * All objects are opaque handles created/destroyed through these calls.
 * Functions return tdo_status; on failure, tdo_last_error() describes the
 * violated precondition or invariant for the calling thread. Complex
 * matrices cross the boundary as row-major interleaved doubles
 * (re, im, re, im, ...).
 */

#ifndef TDO_H
#define TDO_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tdo_status {
    TDO_OK = 0,
    TDO_ERROR = 1,              /* internal error */
    TDO_INVALID_ARGUMENT = 2,   /* validation failure */
    TDO_CONTRACT_VIOLATION = 3  /* computed result violates a contract */
} tdo_status;

const char* tdo_last_error(void);

void tdo_string_free(char* s);

/* ---- Clifford representations ---- */

typedef struct tdo_clifford tdo_clifford;

tdo_status tdo_clifford_create(int n, tdo_clifford** out);
void tdo_clifford_destroy(tdo_clifford* rep);
int tdo_clifford_ambient_dim(const tdo_clifford* rep);
int tdo_clifford_rep_dim(const tdo_clifford* rep);
/* buffer: k*k interleaved complex entries, row-major; generator index 1..n */
tdo_status tdo_clifford_generator(const tdo_clifford* rep, int j, double* buffer);
tdo_status tdo_clifford_vector_matrix(const tdo_clifford* rep, const double* v, int len,
                                      double* buffer);
/* even n only */
tdo_status tdo_clifford_chirality(const tdo_clifford* rep, double* gamma_buffer);
double tdo_clifford_relation_residual(const tdo_clifford* rep);

/* ---- spectra ---- */

typedef struct tdo_spectrum tdo_spectrum;

void tdo_spectrum_destroy(tdo_spectrum* s);
int tdo_spectrum_count(const tdo_spectrum* s);
double tdo_spectrum_eigenvalue(const tdo_spectrum* s, int i);
int tdo_spectrum_multiplicity(const tdo_spectrum* s, int i);
int tdo_spectrum_truncation(const tdo_spectrum* s);
const char* tdo_spectrum_label(const tdo_spectrum* s);

tdo_status tdo_circle_dirac(int M, tdo_spectrum** out);
tdo_status tdo_torus_dirac(int M, tdo_spectrum** out);
tdo_status tdo_torus_dirac_kernel(int M, int* plus_dim, int* minus_dim);
tdo_status tdo_harmonic_dim(int n, int M, int r, int* out);
/* rows x cols interleaved complex matrix */
tdo_status tdo_heat_supertrace(int rows, int cols, const double* matrix, double t, double* out);

/* Warped torus metric e^{2g(y)}dx^2 + dy^2 with
 * g(y) = c0 + sum g_cos[j] cos((j+1)y) + g_sin[j] sin((j+1)y). */
tdo_status tdo_warped_dl(double c0, const double* g_cos, int n_cos, const double* g_sin,
                         int n_sin, int N, tdo_spectrum** out);
tdo_status tdo_warped_dq(double c0, const double* g_cos, int n_cos, const double* g_sin,
                         int n_sin, int x_mode, int N, tdo_spectrum** out);
tdo_status tdo_warped_adjoint_defect(double c0, const double* g_cos, int n_cos,
                                     const double* g_sin, int n_sin, int N, double* defect,
                                     double* dl_hermiticity);
tdo_status tdo_slope_dq(double r, int M, tdo_spectrum** out, double* min_gap);

/* ---- twisted basic cohomology models ---- */

typedef struct tdo_complex tdo_complex;

tdo_status tdo_carriere_complex(double lambda, int N, tdo_complex** out);
tdo_status tdo_suspension_complex(int P, tdo_complex** out);
tdo_status tdo_torus_invariant_complex(int q, int N, tdo_complex** out);
void tdo_complex_destroy(tdo_complex* c);
int tdo_complex_codim(const tdo_complex* c);
tdo_status tdo_complex_validate(const tdo_complex* c, double* max_residual);
/* betti must hold codim+1 entries */
tdo_status tdo_complex_betti(const tdo_complex* c, int twisted, int* betti);
tdo_status tdo_complex_taut(const tdo_complex* c, int* taut);
tdo_status tdo_complex_poincare(const tdo_complex* c, int* dims_symmetric,
                                double* eigenvalue_mismatch);
/* h(t) = sum h_sin[j] sin(2 pi (j+1) t) + h_cos[j] cos(...) on the model's
 * unit period; betti buffers as above. */
tdo_status tdo_carriere_conformal_shift(double lambda, int N, const double* h_cos, int n_cos,
                                        const double* h_sin, int n_sin, int* betti_twisted,
                                        int* betti_untwisted, double* residual);

/* ---- stratified Euler characteristics ---- */

tdo_status tdo_lefschetz_euler_json(const char* action_json, const char* rho, long long* out);
tdo_status tdo_strata_euler_json(const char* dataset_json, const char* rho, long long* out);
tdo_status tdo_gauss_bonnet_json(const char* dataset_json, long long* out);
tdo_status tdo_open_euler(long long chi_compactified, int is_open, long long* out);

/* ---- workbench ---- */

/* Runs a JSON config ({"command": ...}) and returns the rendered report
 * (JSON or CSV per the config). *report is tdo_string_free'd by the caller.
 * Status 2 and 3 follow the CLI exit-code convention; the error text is at
 * tdo_last_error(). */
tdo_status tdo_run_config(const char* config_json, char** report);

/* Acceptance suite: clifford | spectra | transversal | cohomology | euler |
 * all. Writes the pass/fail table (one line per criterion) to *table. */
tdo_status tdo_acceptance(const char* suite, const char* data_dir, char** table);

#ifdef __cplusplus
}
#endif

#endif /* TDO_H */

/*
 * relaxssp: relaxed diffusive-relaxation schemes for degenerate parabolic
 * equations u_t = D p(u)_xx, integrated with optimal SSP Runge-Kutta schemes,
 * and the linear stability toolkit that sizes their time steps.
 *
 * Conventions
 *   - Every fallible call returns rssp_status; RSSP_OK is zero.
 *   - On failure a human-readable message is available from
 *     rssp_last_error() until the next failing call on the same thread.
 *   - Handles are opaque and owned by the caller; release them with the
 *     matching *_destroy function. Destroy functions accept NULL.
 *   - Variable-length outputs use the two-call pattern: pass a buffer and its
 *     capacity, the required length is always written to *count, and
 *     RSSP_ERR_BUFFER_TOO_SMALL is returned if the capacity is insufficient
 *     (passing NULL with capacity 0 is the size query).
 *   - Handles are immutable after creation and may be shared across threads,
 *     except rssp_run / rssp_convergence results which are plain data.
 */
#ifndef RELAXSSP_H
#define RELAXSSP_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(RELAXSSP_BUILDING)
#    define RSSP_API __declspec(dllexport)
#  else
#    define RSSP_API __declspec(dllimport)
#  endif
#else
#  define RSSP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rssp_status {
  RSSP_OK = 0,
  RSSP_ERR_INVALID_ARGUMENT = 1, /* null pointer, out-of-range argument */
  RSSP_ERR_CATALOG = 2,          /* unknown ssp(s,p) scheme */
  RSSP_ERR_CONFIG = 3,           /* inconsistent physical / CFL parameters */
  RSSP_ERR_GRID = 4,             /* grid too small for the stencil */
  RSSP_ERR_DIVERGENCE = 5,       /* non-finite values during a run */
  RSSP_ERR_ANALYSIS = 6,         /* linear-analysis assumption violated */
  RSSP_ERR_PARSE = 7,            /* malformed JSON */
  RSSP_ERR_BUFFER_TOO_SMALL = 8,
  RSSP_ERR_UNAVAILABLE = 9,      /* quantity not defined for this object */
  RSSP_ERR_INTERNAL = 10
} rssp_status;

typedef enum rssp_recon {
  RSSP_RECON_PWC = 0,
  RSSP_RECON_PWL = 1, /* piecewise linear, minmod limiter */
  RSSP_RECON_WENO5 = 2
} rssp_recon;

typedef enum rssp_lambda_mode {
  RSSP_LAMBDA_SSP = 0,    /* min alpha/beta of the Shu-Osher form */
  RSSP_LAMBDA_OPT = 1,    /* half the real-axis stability interval */
  RSSP_LAMBDA_CUSTOM = 2
} rssp_lambda_mode;

typedef struct rssp_scheme_s* rssp_scheme;
typedef struct rssp_problem_s* rssp_problem;
typedef struct rssp_run_s* rssp_run;
typedef struct rssp_convergence_s* rssp_convergence;

/* ---- errors ------------------------------------------------------------ */

RSSP_API const char* rssp_last_error(void);
RSSP_API const char* rssp_status_string(rssp_status status);
RSSP_API const char* rssp_version(void);

/* ---- schemes ----------------------------------------------------------- */

RSSP_API rssp_status rssp_scheme_catalog(int stages, int order, rssp_scheme* out);
/* "ssp(s,p)", case-insensitive. */
RSSP_API rssp_status rssp_scheme_by_name(const char* name, rssp_scheme* out);
/* {"s","p","a","b"[,"c"]} or {"s","p","alpha","beta"}. */
RSSP_API rssp_status rssp_scheme_from_json(const char* json, const char* name,
                                           rssp_scheme* out);
/* Catalog size and the (s,p) pair at index i. */
RSSP_API size_t rssp_catalog_size(void);
RSSP_API rssp_status rssp_catalog_entry(size_t index, int* stages, int* order);
RSSP_API void rssp_scheme_destroy(rssp_scheme scheme);

RSSP_API int rssp_scheme_stages(rssp_scheme scheme);
RSSP_API int rssp_scheme_order(rssp_scheme scheme);
RSSP_API const char* rssp_scheme_name(rssp_scheme scheme);
/* NUL-terminated Butcher JSON; *count includes the terminator. */
RSSP_API rssp_status rssp_scheme_butcher_json(rssp_scheme scheme, char* buf, size_t capacity,
                                              size_t* count);
/* RSSP_ERR_UNAVAILABLE for Butcher-only user tableaux. */
RSSP_API rssp_status rssp_scheme_shu_osher_json(rssp_scheme scheme, char* buf,
                                                size_t capacity, size_t* count);

typedef struct rssp_order_residual {
  double residual;
  char condition[32];
} rssp_order_residual;

/* Order conditions through order 3; *passed is 1 if all residuals <= 1e-12. */
RSSP_API rssp_status rssp_scheme_validate_order(rssp_scheme scheme, int order, int* passed,
                                                rssp_order_residual* residuals,
                                                size_t capacity, size_t* count);

/* ---- stability --------------------------------------------------------- */

RSSP_API rssp_status rssp_scheme_lambda_ssp(rssp_scheme scheme, double* out);
RSSP_API rssp_status rssp_scheme_stability_polynomial(rssp_scheme scheme, double* coeffs,
                                                      size_t capacity, size_t* count);
/* Real-axis stability interval |eta|; tol <= 0 selects the default 1e-10. */
RSSP_API rssp_status rssp_scheme_eta(rssp_scheme scheme, double tol, double* out);
RSSP_API rssp_status rssp_scheme_lambda_opt(rssp_scheme scheme, double* out);

typedef struct rssp_locus_point {
  double theta;
  double re;
  double im;
  int branch;
} rssp_locus_point;

/* samples >= 16; yields samples * degree points, branch-major. */
RSSP_API rssp_status rssp_scheme_boundary_locus(rssp_scheme scheme, int samples,
                                                rssp_locus_point* points, size_t capacity,
                                                size_t* count);

/* sigma(xi) * h^2 of the linearized operator, xi in (0, pi]. */
RSSP_API rssp_status rssp_space_symbol(rssp_recon recon, double xi, double h_phi, double* re,
                                       double* im);
RSSP_API rssp_status rssp_von_neumann_c1(rssp_recon recon, rssp_scheme scheme, double* out);
RSSP_API rssp_status rssp_estimate_c2(rssp_recon recon, rssp_scheme scheme, double* out);

/* ---- problems ---------------------------------------------------------- */

RSSP_API rssp_status rssp_problem_heat(int mode, double d, rssp_problem* out);
RSSP_API rssp_status rssp_problem_barenblatt(double m, double t0, double mass, double d,
                                             rssp_problem* out);
RSSP_API void rssp_problem_destroy(rssp_problem problem);
RSSP_API const char* rssp_problem_name(rssp_problem problem);
RSSP_API double rssp_problem_mu(rssp_problem problem);
/* RSSP_ERR_UNAVAILABLE if the problem has no closed form. */
RSSP_API rssp_status rssp_problem_exact(rssp_problem problem, double x, double t, double* out);
RSSP_API rssp_status rssp_problem_support_radius(rssp_problem problem, double t, double* out);

typedef struct rssp_grid {
  int n;
  double x_lo;
  double x_hi;
  int periodic;          /* nonzero: periodic; zero: Dirichlet */
  double boundary_value; /* Dirichlet ghost value */
} rssp_grid;

/* Default computational domain of the problem for n cells up to t_end. */
RSSP_API rssp_status rssp_problem_default_grid(rssp_problem problem, int n, double t_end,
                                               rssp_grid* out);

/* ---- runs -------------------------------------------------------------- */

typedef struct rssp_config {
  rssp_recon recon;
  double phi;       /* relaxation speed, >= 0 */
  double c1;        /* linear CFL constant, > 0 */
  double delta;     /* safety reduction, 0 <= delta < c1 */
  rssp_lambda_mode lambda_mode;
  double lambda;    /* used when lambda_mode == RSSP_LAMBDA_CUSTOM */
  double fixed_dt;  /* > 0 overrides the CFL model */
} rssp_config;

/* WENO5, phi = 0, c1 = 0.79, delta = 0.01, lambda = opt. */
RSSP_API void rssp_config_default(rssp_config* cfg);

typedef struct rssp_run_stats {
  long long n_f;
  long long steps;
  double t_final;
  double dt;
  double lambda;
} rssp_run_stats;

RSSP_API rssp_status rssp_timestep(rssp_problem problem, const rssp_config* cfg,
                                   const rssp_grid* grid, rssp_scheme scheme, double* out);
RSSP_API rssp_status rssp_evolve(rssp_problem problem, const rssp_config* cfg,
                                 const rssp_grid* grid, rssp_scheme scheme, double t_end,
                                 rssp_run* out);
RSSP_API void rssp_run_destroy(rssp_run run);
RSSP_API rssp_status rssp_run_get_stats(rssp_run run, rssp_run_stats* out);
/* Cell centres and values; arrays of length n. Either pointer may be NULL. */
RSSP_API rssp_status rssp_run_field(rssp_run run, double* x, double* u, size_t capacity,
                                    size_t* count);
RSSP_API rssp_status rssp_run_errors(rssp_run run, double* l1, double* linf);
RSSP_API rssp_status rssp_run_mass(rssp_run run, double* initial, double* final_mass);

/* ---- convergence ------------------------------------------------------- */

typedef struct rssp_convergence_row {
  int n;
  double h;
  double dt;
  double l1;
  double linf;
  long long n_f;
  long long steps;
} rssp_convergence_row;

/* grids: >= 3 sizes, each double the previous. */
RSSP_API rssp_status rssp_convergence_study(rssp_problem problem, const rssp_config* cfg,
                                            rssp_scheme scheme, const int* grids,
                                            size_t grid_count, double t_end,
                                            rssp_convergence* out);
RSSP_API void rssp_convergence_destroy(rssp_convergence report);
RSSP_API size_t rssp_convergence_size(rssp_convergence report);
RSSP_API rssp_status rssp_convergence_get_row(rssp_convergence report, size_t index,
                                              rssp_convergence_row* out);
/* Order between rows index and index+1 (L1 and Linf). */
RSSP_API rssp_status rssp_convergence_get_order(rssp_convergence report, size_t index,
                                                double* l1_order, double* linf_order);
RSSP_API rssp_status rssp_convergence_fitted_order(rssp_convergence report, double* out);
RSSP_API rssp_status rssp_convergence_lambda(rssp_convergence report, double* out);

#ifdef __cplusplus
}
#endif

#endif /* RELAXSSP_H */

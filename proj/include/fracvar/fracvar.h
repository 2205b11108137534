/* C interface of the fracvar library. All functions return an fv_status;
 * on failure fv_last_error() describes the problem (thread-local). Output
 * arrays are caller-allocated unless a function returns a handle. */
#ifndef FRACVAR_FRACVAR_H
#define FRACVAR_FRACVAR_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(FRACVAR_BUILDING)
#define FV_API __attribute__((visibility("default")))
#else
#define FV_API
#endif

typedef enum fv_status {
  FV_OK = 0,
  FV_ERR_INVALID_ARGUMENT = 1,
  FV_ERR_DOMAIN = 2,
  FV_ERR_POLE = 3,
  FV_ERR_NO_CONVERGENCE = 4,
  FV_ERR_SINGULAR = 5,
  FV_ERR_MESH_MISMATCH = 6,
  FV_ERR_INDEX = 7,
  FV_ERR_NON_AFFINE = 8,
  FV_ERR_BUFFER_TOO_SMALL = 9,
  FV_ERR_INTERNAL = 10
} fv_status;

FV_API const char* fv_last_error(void);
FV_API const char* fv_status_name(fv_status status);

/* special functions */
FV_API fv_status fv_gamma(double z, double* out);
FV_API fv_status fv_gen_binomial(double alpha, int k, double* out);
FV_API fv_status fv_mittag_leffler(double alpha, double beta, double z, double* out);
FV_API fv_status fv_stirling_function(double alpha, int k, double* out);

/* sampled curves on a uniform mesh of n subintervals */
typedef struct fv_curve fv_curve;

FV_API fv_status fv_curve_create(double a, double b, int n, const double* values,
                                 fv_curve** out);
/* Samples a catalog function ("t2", "t4", "exp2t", "lnt"). */
FV_API fv_status fv_curve_sample(double a, double b, int n, const char* function_id,
                                 fv_curve** out);
FV_API void fv_curve_free(fv_curve* curve);
FV_API fv_status fv_curve_mesh(const fv_curve* curve, double* a, double* b, int* n);
/* Copies the n+1 values; len must be at least n+1. */
FV_API fv_status fv_curve_values(const fv_curve* curve, double* buf, int len);

/* finite-difference operators; whole-curve variants write n+1 values */
FV_API fv_status fv_gl_weights(double alpha, int K, double* out);
FV_API fv_status fv_gl_left(const fv_curve* curve, double alpha, double* out, int len);
FV_API fv_status fv_gl_right(const fv_curve* curve, double alpha, double* out, int len);
FV_API fv_status fv_gl_shifted_left(const fv_curve* curve, double alpha, int i, double* out);
FV_API fv_status fv_diethelm_caputo(const fv_curve* curve, double alpha,
                                    const double* boundary_derivs, int count, int i,
                                    double* out);
FV_API fv_status fv_l2_error(const fv_curve* x, const fv_curve* y, double* out);
FV_API fv_status fv_max_error(const fv_curve* x, const fv_curve* y, double* out);
FV_API fv_status fv_rl_power_exact(double nu, double alpha, double t, double a, double* out);
FV_API fv_status fv_rl_exp_exact(double lambda, double alpha, double t, double* out);
FV_API fv_status fv_hadamard_logpow_exact(double beta, double alpha, double t, double* out);

/* catalog functions: k-th derivative and exact fractional derivatives.
 * kind is "rl" (terminal 0), "hadamard" (terminal 1) or "hadamard0". */
FV_API fv_status fv_function_eval(const char* function_id, int k, double t, double* out);
FV_API fv_status fv_function_exact(const char* function_id, const char* kind, double alpha,
                                   double t, double* out);

/* expansion coefficients */
typedef struct fv_moment_coeffs fv_moment_coeffs;

FV_API fv_status fv_moment_coeffs_create(double alpha, int N, int hadamard,
                                         fv_moment_coeffs** out);
FV_API void fv_moment_coeffs_free(fv_moment_coeffs* coeffs);
FV_API fv_status fv_moment_coeffs_get(const fv_moment_coeffs* coeffs, double* A, double* B);
FV_API fv_status fv_moment_coeffs_c(const fv_moment_coeffs* coeffs, int p, double* out);
/* Row-major na x nN table of B(alpha, N). */
FV_API fv_status fv_b_table(const double* alphas, int na, const int* Ns, int nN, double* out);

/* Expansion of a catalog function at t. method is one of
 *   integer, integer-right, moment, moment-right, caputo, atanackovic   on [0,1]
 *   hadamard-integer                                                     terminal 0
 *   hadamard-moment, hadamard-moment-right                               on [1,2]
 * quad_n Gauss-Legendre panels are used for the moments. */
FV_API fv_status fv_expand(const char* function_id, const char* method, double alpha, int N,
                           double t, int quad_n, double* out);

/* Truncation bounds; method is integer, moment or hadamard. */
FV_API fv_status fv_bound(const char* method, double gauge, double alpha, int N, double t,
                          double a, double* out);
/* Bound sweep over grid nodes of (0,1] (or (1,2] for hadamard). Each output
 * array (any may be NULL) holds grid values; dominated[i] is 1 when
 * error <= bound + 1e-12 (1 + |exact|). violations receives the count of
 * undominated nodes. */
FV_API fv_status fv_bound_sweep(const char* function_id, const char* method, double alpha,
                                int N, int grid, int quad_n, double* t, double* error,
                                double* bound, int* dominated, int* violations);

/* direct method */
typedef struct fv_problem fv_problem;

typedef double (*fv_lagrangian_fn)(double t, double x, double xdot, double d, void* user);

typedef struct fv_lagrangian {
  fv_lagrangian_fn L;
  fv_lagrangian_fn dL_dx;
  fv_lagrangian_fn dL_dxdot; /* may be NULL when uses_xdot is 0 */
  fv_lagrangian_fn dL_ddalpha;
  int uses_xdot;
  void* user;
} fv_lagrangian;

FV_API fv_status fv_problem_create(double a, double b, double x_a, double x_b, double alpha,
                                   const fv_lagrangian* lagrangian, fv_problem** out);
/* example is 1, 2 or 3; alpha is used by example 2 only. */
FV_API fv_status fv_problem_example(int example, double alpha, fv_problem** out);
FV_API void fv_problem_free(fv_problem* problem);

FV_API fv_status fv_discretize_eval(const fv_problem* problem, int n, const double* interior,
                                    double* out);
FV_API fv_status fv_stationarity_eval(const fv_problem* problem, int n,
                                      const double* interior, double* out);
/* linear != 0 takes the single-solve path. iterations and residual may be NULL. */
FV_API fv_status fv_solve_direct(const fv_problem* problem, int n, double newton_tol,
                                 int max_iter, int linear, fv_curve** out, int* iterations,
                                 double* residual);
/* Dense assembly of example 1 or 2 (alpha = 0.5 for example 1), solved. */
FV_API fv_status fv_example_system_solve(int example, int n, double alpha, fv_curve** out);
FV_API fv_status fv_example3_residual(const double* interior, int n, double* out);
FV_API fv_status fv_euler_lagrange_residual(const fv_curve* curve, const fv_problem* problem,
                                            fv_curve** out);

/* Reference solutions. id: ex1, ex2, ex3, ex4 */
FV_API fv_status fv_reference_solution(const char* id, double alpha, double t, double* out);

/* indirect method: closed forms of example 2, route "integer" or "moment" */
FV_API fv_status fv_closed_form(const char* route, double alpha, int N, double t, double* out);

typedef struct fv_tpbvp_solution fv_tpbvp_solution;

typedef void (*fv_rhs_fn)(double t, const double* y, double* dy, int m, void* user);

typedef struct fv_tpbvp_options {
  double eps;
  int grading_levels;
  int subdivision;
  int taylor_proxy;
} fv_tpbvp_options;

FV_API fv_tpbvp_options fv_tpbvp_default_options(void);
/* example 2 or 4 on [0,1] with n subintervals */
FV_API fv_status fv_tpbvp_solve_example(int example, double alpha, int N, int n,
                                        const fv_tpbvp_options* options,
                                        fv_tpbvp_solution** out);
FV_API fv_status fv_tpbvp_solve(int m, fv_rhs_fn rhs, void* user, const int* left_index,
                                const double* left_value, int n_left, const int* right_index,
                                const double* right_value, int n_right, double a, double b,
                                int n, const fv_tpbvp_options* options,
                                fv_tpbvp_solution** out);
FV_API int fv_tpbvp_dimension(const fv_tpbvp_solution* solution);
FV_API fv_status fv_tpbvp_component(const fv_tpbvp_solution* solution, int index,
                                    fv_curve** out);
FV_API void fv_tpbvp_solution_free(fv_tpbvp_solution* solution);

#ifdef __cplusplus
}
#endif

#endif

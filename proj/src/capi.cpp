#include "fracvar/fracvar.h"

#include <exception>
#include <memory>
#include <new>
#include <string>

#include "fracvar/catalog.hpp"
#include "fracvar/direct.hpp"
#include "fracvar/error.hpp"
#include "fracvar/expansions.hpp"
#include "fracvar/indirect.hpp"
#include "fracvar/specfun.hpp"

using namespace fracvar;

struct fv_curve {
  SampledCurve curve;
};
struct fv_moment_coeffs {
  expansions::MomentCoeffs coeffs;
};
struct fv_problem {
  direct::DirectProblem problem;
};
struct fv_tpbvp_solution {
  indirect::TpBvpSolution solution;
};

namespace {

thread_local std::string last_error;

fv_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return FV_ERR_INVALID_ARGUMENT;
    case ErrorKind::Domain: return FV_ERR_DOMAIN;
    case ErrorKind::Pole: return FV_ERR_POLE;
    case ErrorKind::NoConvergence: return FV_ERR_NO_CONVERGENCE;
    case ErrorKind::Singular: return FV_ERR_SINGULAR;
    case ErrorKind::MeshMismatch: return FV_ERR_MESH_MISMATCH;
    case ErrorKind::Index: return FV_ERR_INDEX;
    case ErrorKind::NonAffine: return FV_ERR_NON_AFFINE;
  }
  return FV_ERR_INTERNAL;
}

struct BufferTooSmall {};

template <class F>
fv_status guard(F&& body) {
  try {
    last_error.clear();
    body();
    return FV_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const BufferTooSmall&) {
    last_error = "output buffer too small";
    return FV_ERR_BUFFER_TOO_SMALL;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FV_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return FV_ERR_INTERNAL;
  }
}

template <class T>
void need(const T* p, const char* what) {
  require(p != nullptr, std::string(what) + " must not be null");
}

void copy_out(std::span<const double> src, double* out, int len) {
  need(out, "output buffer");
  if (len < static_cast<int>(src.size())) throw BufferTooSmall{};
  std::copy(src.begin(), src.end(), out);
}

std::string str(const char* s, const char* what) {
  need(s, what);
  return s;
}

indirect::TpBvpOptions to_options(const fv_tpbvp_options* o) {
  indirect::TpBvpOptions r;
  if (o != nullptr) {
    r.eps = o->eps;
    r.grading_levels = o->grading_levels;
    r.subdivision = o->subdivision;
    r.taylor_proxy = o->taylor_proxy != 0;
  }
  return r;
}

}  // namespace

extern "C" {

const char* fv_last_error(void) { return last_error.c_str(); }

const char* fv_status_name(fv_status s) {
  switch (s) {
    case FV_OK: return "ok";
    case FV_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case FV_ERR_DOMAIN: return "domain";
    case FV_ERR_POLE: return "pole";
    case FV_ERR_NO_CONVERGENCE: return "no_convergence";
    case FV_ERR_SINGULAR: return "singular";
    case FV_ERR_MESH_MISMATCH: return "mesh_mismatch";
    case FV_ERR_INDEX: return "index";
    case FV_ERR_NON_AFFINE: return "non_affine";
    case FV_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case FV_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

fv_status fv_gamma(double z, double* out) {
  return guard([&] { need(out, "out"); *out = specfun::gamma(z); });
}
fv_status fv_gen_binomial(double alpha, int k, double* out) {
  return guard([&] {
    need(out, "out");
    require(k >= 0, "k must be nonnegative");
    *out = specfun::gen_binomial(alpha, k);
  });
}
fv_status fv_mittag_leffler(double alpha, double beta, double z, double* out) {
  return guard([&] { need(out, "out"); *out = specfun::mittag_leffler(alpha, beta, z); });
}
fv_status fv_stirling_function(double alpha, int k, double* out) {
  return guard([&] {
    need(out, "out");
    require(k >= 0, "k must be nonnegative");
    *out = specfun::stirling_function(alpha, k);
  });
}

fv_status fv_curve_create(double a, double b, int n, const double* values, fv_curve** out) {
  return guard([&] {
    need(out, "out");
    need(values, "values");
    Mesh mesh(a, b, n);
    std::vector<double> v(values, values + n + 1);
    *out = new fv_curve{SampledCurve(mesh, std::move(v))};
  });
}
fv_status fv_curve_sample(double a, double b, int n, const char* function_id, fv_curve** out) {
  return guard([&] {
    need(out, "out");
    const auto f = catalog::get(str(function_id, "function_id"));
    *out = new fv_curve{SampledCurve::sample(Mesh(a, b, n), f.derivs.function(0))};
  });
}
void fv_curve_free(fv_curve* curve) { delete curve; }
fv_status fv_curve_mesh(const fv_curve* c, double* a, double* b, int* n) {
  return guard([&] {
    need(c, "curve");
    if (a) *a = c->curve.mesh().a();
    if (b) *b = c->curve.mesh().b();
    if (n) *n = c->curve.mesh().n();
  });
}
fv_status fv_curve_values(const fv_curve* c, double* buf, int len) {
  return guard([&] {
    need(c, "curve");
    copy_out(c->curve.values(), buf, len);
  });
}

fv_status fv_gl_weights(double alpha, int K, double* out) {
  return guard([&] {
    need(out, "out");
    const auto w = ops::gl_weights(alpha, K).w;
    std::copy(w.begin(), w.end(), out);
  });
}
fv_status fv_gl_left(const fv_curve* c, double alpha, double* out, int len) {
  return guard([&] {
    need(c, "curve");
    copy_out(ops::gl_left_all(c->curve, alpha), out, len);
  });
}
fv_status fv_gl_right(const fv_curve* c, double alpha, double* out, int len) {
  return guard([&] {
    need(c, "curve");
    copy_out(ops::gl_right_all(c->curve, alpha), out, len);
  });
}
fv_status fv_gl_shifted_left(const fv_curve* c, double alpha, int i, double* out) {
  return guard([&] {
    need(c, "curve");
    need(out, "out");
    *out = ops::gl_shifted_left(c->curve, alpha, i);
  });
}
fv_status fv_diethelm_caputo(const fv_curve* c, double alpha, const double* bd, int count,
                             int i, double* out) {
  return guard([&] {
    need(c, "curve");
    need(out, "out");
    require(count >= 0 && (count == 0 || bd != nullptr), "boundary derivatives missing");
    *out = ops::diethelm_caputo(c->curve, alpha,
                                std::span<const double>(bd, static_cast<size_t>(count)), i);
  });
}
fv_status fv_l2_error(const fv_curve* x, const fv_curve* y, double* out) {
  return guard([&] {
    need(x, "x");
    need(y, "y");
    need(out, "out");
    *out = ops::l2_error(x->curve, y->curve);
  });
}
fv_status fv_max_error(const fv_curve* x, const fv_curve* y, double* out) {
  return guard([&] {
    need(x, "x");
    need(y, "y");
    need(out, "out");
    *out = ops::max_error(x->curve, y->curve);
  });
}
fv_status fv_rl_power_exact(double nu, double alpha, double t, double a, double* out) {
  return guard([&] { need(out, "out"); *out = ops::rl_power_exact(nu, alpha, t, a); });
}
fv_status fv_rl_exp_exact(double lambda, double alpha, double t, double* out) {
  return guard([&] { need(out, "out"); *out = ops::rl_exp_exact(lambda, alpha, t); });
}
fv_status fv_hadamard_logpow_exact(double beta, double alpha, double t, double* out) {
  return guard([&] { need(out, "out"); *out = ops::hadamard_logpow_exact(beta, alpha, t); });
}

fv_status fv_function_eval(const char* id, int k, double t, double* out) {
  return guard([&] {
    need(out, "out");
    const auto f = catalog::get(str(id, "function_id"));
    require(k >= 0 && k <= f.derivs.max_order, "derivative order out of range");
    *out = f.derivs(k, t);
  });
}
fv_status fv_function_exact(const char* id, const char* kind, double alpha, double t,
                            double* out) {
  return guard([&] {
    need(out, "out");
    const auto f = catalog::get(str(id, "function_id"));
    const std::string k = str(kind, "kind");
    const auto& ex = k == "rl"          ? f.rl_exact
                     : k == "hadamard"  ? f.hadamard_exact
                     : k == "hadamard0" ? f.hadamard0_exact
                                        : throw Error(ErrorKind::InvalidArgument,
                                                      "unknown kind '" + k + "'");
    require(static_cast<bool>(ex), "no exact " + k + " derivative for '" + f.id + "'");
    *out = ex(alpha, t);
  });
}

fv_status fv_moment_coeffs_create(double alpha, int N, int hadamard, fv_moment_coeffs** out) {
  return guard([&] {
    need(out, "out");
    *out = new fv_moment_coeffs{hadamard ? expansions::hadamard_moment_coeffs(alpha, N)
                                         : expansions::moment_coeffs(alpha, N)};
  });
}
void fv_moment_coeffs_free(fv_moment_coeffs* c) { delete c; }
fv_status fv_moment_coeffs_get(const fv_moment_coeffs* c, double* A, double* B) {
  return guard([&] {
    need(c, "coeffs");
    if (A) *A = c->coeffs.A;
    if (B) *B = c->coeffs.B;
  });
}
fv_status fv_moment_coeffs_c(const fv_moment_coeffs* c, int p, double* out) {
  return guard([&] {
    need(c, "coeffs");
    need(out, "out");
    if (p < 2 || p > c->coeffs.N) fail(ErrorKind::Index, "p must lie in 2..N");
    *out = c->coeffs.c(p);
  });
}
fv_status fv_b_table(const double* alphas, int na, const int* Ns, int nN, double* out) {
  return guard([&] {
    need(alphas, "alphas");
    need(Ns, "Ns");
    need(out, "out");
    require(na >= 0 && nN >= 0, "negative table size");
    const auto tab = expansions::b_table(std::span<const double>(alphas, static_cast<size_t>(na)),
                                         std::span<const int>(Ns, static_cast<size_t>(nN)));
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nN; ++j)
        out[static_cast<size_t>(i) * static_cast<size_t>(nN) + static_cast<size_t>(j)] =
            tab[static_cast<size_t>(i)][static_cast<size_t>(j)];
  });
}

fv_status fv_expand(const char* id, const char* method, double alpha, int N, double t,
                    int quad_n, double* out) {
  return guard([&] {
    need(out, "out");
    const auto f = catalog::get(str(id, "function_id"));
    const std::string m = str(method, "method");
    const auto x = f.derivs.function(0);
    const auto xd = f.derivs.function(1);
    const auto gl = Quadrature::GaussLegendre;
    if (m == "integer") {
      *out = expansions::expand_integer_left(f.derivs, alpha, N, t, 0.0);
    } else if (m == "integer-right") {
      *out = expansions::expand_integer_right(f.derivs, alpha, N, t, 1.0);
    } else if (m == "moment") {
      *out = expansions::expand_moment_left(x, xd, expansions::moment_coeffs(alpha, N), t, 0.0,
                                            quad_n, gl);
    } else if (m == "moment-right") {
      *out = expansions::expand_moment_right(x, xd, expansions::moment_coeffs(alpha, N), t, 1.0,
                                             quad_n, gl);
    } else if (m == "caputo") {
      *out = expansions::expand_caputo_left(x, xd, expansions::moment_coeffs(alpha, N), t, 0.0,
                                            quad_n, gl);
    } else if (m == "atanackovic") {
      *out = expansions::expand_atanackovic(x, expansions::moment_coeffs(alpha, N), t, 0.0,
                                            quad_n, gl);
    } else if (m == "hadamard-integer") {
      *out = expansions::hadamard_expand_integer(f.derivs, alpha, N, t,
                                                 expansions::HadamardDirection::Derivative);
    } else if (m == "hadamard-moment") {
      *out = expansions::hadamard_expand_moment(
          x, xd, expansions::hadamard_moment_coeffs(alpha, N), t, 1.0, quad_n, gl);
    } else if (m == "hadamard-moment-right") {
      *out = expansions::hadamard_expand_moment_right(
          x, xd, expansions::hadamard_moment_coeffs(alpha, N), t, 2.0, quad_n, gl);
    } else {
      fail(ErrorKind::InvalidArgument, "unknown method '" + m + "'");
    }
  });
}

fv_status fv_bound(const char* method, double gauge, double alpha, int N, double t, double a,
                   double* out) {
  return guard([&] {
    need(out, "out");
    const std::string m = str(method, "method");
    if (m == "integer") *out = expansions::bound_integer(gauge, alpha, N, t, a);
    else if (m == "moment") *out = expansions::bound_moment(gauge, alpha, N, t, a);
    else if (m == "hadamard") *out = expansions::bound_hadamard(gauge, alpha, N, t, a);
    else fail(ErrorKind::InvalidArgument, "unknown bound method '" + m + "'");
  });
}

fv_status fv_bound_sweep(const char* id, const char* method, double alpha, int N, int grid,
                         int quad_n, double* t, double* error, double* bound, int* dominated,
                         int* violations) {
  return guard([&] {
    const auto f = catalog::get(str(id, "function_id"));
    const std::string m = str(method, "method");
    catalog::BoundMethod bm;
    if (m == "integer") bm = catalog::BoundMethod::Integer;
    else if (m == "moment") bm = catalog::BoundMethod::Moment;
    else if (m == "hadamard") bm = catalog::BoundMethod::Hadamard;
    else fail(ErrorKind::InvalidArgument, "unknown bound method '" + m + "'");
    catalog::BoundSweepOptions o;
    o.grid = grid;
    o.quad_n = quad_n;
    const auto rows = catalog::bound_sweep(f, bm, alpha, N, o);
    int v = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (t) t[i] = rows[i].t;
      if (error) error[i] = rows[i].error;
      if (bound) bound[i] = rows[i].bound;
      if (dominated) dominated[i] = rows[i].dominated ? 1 : 0;
      if (!rows[i].dominated) ++v;
    }
    if (violations) *violations = v;
  });
}

fv_status fv_problem_create(double a, double b, double x_a, double x_b, double alpha,
                            const fv_lagrangian* lag, fv_problem** out) {
  return guard([&] {
    need(out, "out");
    need(lag, "lagrangian");
    require(lag->L && lag->dL_dx && lag->dL_ddalpha, "lagrangian callbacks missing");
    require(!lag->uses_xdot || lag->dL_dxdot, "dL_dxdot missing");
    direct::DirectProblem p;
    p.a = a;
    p.b = b;
    p.x_a = x_a;
    p.x_b = x_b;
    p.alpha = alpha;
    const fv_lagrangian L = *lag;
    auto wrap = [L](fv_lagrangian_fn fn) -> direct::LagrangianSpec::Fn {
      if (fn == nullptr) return [](double, double, double, double) { return 0.0; };
      return [fn, user = L.user](double t, double x, double xd, double d) {
        return fn(t, x, xd, d, user);
      };
    };
    p.lagrangian.L = wrap(L.L);
    p.lagrangian.dL_dx = wrap(L.dL_dx);
    p.lagrangian.dL_dxdot = wrap(L.dL_dxdot);
    p.lagrangian.dL_ddalpha = wrap(L.dL_ddalpha);
    p.lagrangian.uses_xdot = L.uses_xdot != 0;
    require(a < b, "need a < b");
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
    *out = new fv_problem{std::move(p)};
  });
}
fv_status fv_problem_example(int example, double alpha, fv_problem** out) {
  return guard([&] {
    need(out, "out");
    switch (example) {
      case 1: *out = new fv_problem{direct::example1_problem()}; break;
      case 2: *out = new fv_problem{direct::example2_problem(alpha)}; break;
      case 3: *out = new fv_problem{direct::example3_problem()}; break;
      default: fail(ErrorKind::InvalidArgument, "example must be 1, 2 or 3");
    }
  });
}
void fv_problem_free(fv_problem* p) { delete p; }

fv_status fv_discretize_eval(const fv_problem* p, int n, const double* interior, double* out) {
  return guard([&] {
    need(p, "problem");
    need(interior, "interior");
    need(out, "out");
    require(n >= 2, "n >= 2");
    *out = direct::discretize(p->problem, n)(
        std::span<const double>(interior, static_cast<size_t>(n - 1)));
  });
}
fv_status fv_stationarity_eval(const fv_problem* p, int n, const double* interior,
                               double* out) {
  return guard([&] {
    need(p, "problem");
    need(interior, "interior");
    need(out, "out");
    require(n >= 2, "n >= 2");
    const auto r = direct::stationarity(p->problem, n)
                       .residual(std::span<const double>(interior, static_cast<size_t>(n - 1)));
    std::copy(r.begin(), r.end(), out);
  });
}
fv_status fv_solve_direct(const fv_problem* p, int n, double tol, int max_iter, int linear,
                          fv_curve** out, int* iterations, double* residual) {
  return guard([&] {
    need(p, "problem");
    need(out, "out");
    direct::DirectOptions o;
    o.newton_tol = tol;
    o.max_iter = max_iter;
    o.linear = linear != 0;
    auto s = direct::solve_direct(p->problem, n, o);
    if (iterations) *iterations = s.iterations;
    if (residual) *residual = s.residual_norm;
    *out = new fv_curve{std::move(s.curve)};
  });
}
fv_status fv_example_system_solve(int example, int n, double alpha, fv_curve** out) {
  return guard([&] {
    need(out, "out");
    direct::DenseSystem sys;
    if (example == 1) {
      if (alpha != 0.5) fail(ErrorKind::InvalidArgument, "example 1 is posed for alpha = 0.5");
      sys = direct::example1_system(n);
    } else if (example == 2) {
      sys = direct::example2_system(n, alpha);
    } else {
      fail(ErrorKind::InvalidArgument, "dense systems exist for examples 1 and 2");
    }
    const auto x = direct::solve_dense(sys);
    std::vector<double> v(static_cast<size_t>(n) + 1);
    v.front() = 0.0;
    std::copy(x.begin(), x.end(), v.begin() + 1);
    v.back() = 1.0;
    *out = new fv_curve{SampledCurve(Mesh(0.0, 1.0, n), std::move(v))};
  });
}
fv_status fv_example3_residual(const double* interior, int n, double* out) {
  return guard([&] {
    need(interior, "interior");
    need(out, "out");
    require(n >= 2, "n >= 2");
    const auto r = direct::example3_residual(
        std::span<const double>(interior, static_cast<size_t>(n - 1)), n);
    std::copy(r.begin(), r.end(), out);
  });
}
fv_status fv_euler_lagrange_residual(const fv_curve* c, const fv_problem* p, fv_curve** out) {
  return guard([&] {
    need(c, "curve");
    need(p, "problem");
    need(out, "out");
    *out = new fv_curve{direct::euler_lagrange_residual(c->curve, p->problem)};
  });
}

fv_status fv_reference_solution(const char* id, double alpha, double t, double* out) {
  return guard([&] {
    need(out, "out");
    const std::string s = str(id, "id");
    if (s == "ex1") *out = t * t;
    else if (s == "ex2") *out = indirect::analytic_solution_example2(alpha, t);
    else if (s == "ex3") *out = direct::example3_minimizer(t);
    else if (s == "ex4") *out = indirect::exact_solution_example4(alpha, t);
    else fail(ErrorKind::InvalidArgument, "unknown reference '" + s + "'");
  });
}

fv_status fv_closed_form(const char* route, double alpha, int N, double t, double* out) {
  return guard([&] {
    need(out, "out");
    const std::string r = str(route, "route");
    if (r == "integer") *out = indirect::solve_example2_integer(alpha, N)(t);
    else if (r == "moment") *out = indirect::solve_example2_moment_closed(alpha, N)(t);
    else fail(ErrorKind::InvalidArgument, "route must be integer or moment");
  });
}

fv_tpbvp_options fv_tpbvp_default_options(void) {
  const indirect::TpBvpOptions d;
  return {d.eps, d.grading_levels, d.subdivision, d.taylor_proxy ? 1 : 0};
}

fv_status fv_tpbvp_solve_example(int example, double alpha, int N, int n,
                                 const fv_tpbvp_options* options, fv_tpbvp_solution** out) {
  return guard([&] {
    need(out, "out");
    indirect::TpBvpSystem sys;
    if (example == 2) sys = indirect::assemble_tpbvp_example2(alpha, N);
    else if (example == 4) sys = indirect::assemble_tpbvp_example4(alpha, N);
    else fail(ErrorKind::InvalidArgument, "TPBVP examples are 2 and 4");
    *out = new fv_tpbvp_solution{
        indirect::solve_linear_tpbvp(sys, Mesh(0.0, 1.0, n), to_options(options))};
  });
}

fv_status fv_tpbvp_solve(int m, fv_rhs_fn rhs, void* user, const int* li, const double* lv,
                         int nl, const int* ri, const double* rv, int nr, double a, double b,
                         int n, const fv_tpbvp_options* options, fv_tpbvp_solution** out) {
  return guard([&] {
    need(out, "out");
    require(rhs != nullptr, "rhs must not be null");
    require(m >= 1 && nl >= 0 && nr >= 0, "bad dimensions");
    require((nl == 0 || (li && lv)) && (nr == 0 || (ri && rv)), "boundary arrays missing");
    indirect::TpBvpSystem sys;
    sys.m = m;
    sys.rhs = [rhs, user, m](double t, std::span<const double> y) {
      std::vector<double> dy(static_cast<size_t>(m), 0.0);
      rhs(t, y.data(), dy.data(), m, user);
      return dy;
    };
    for (int i = 0; i < nl; ++i) sys.left_conditions.emplace_back(li[i], lv[i]);
    for (int i = 0; i < nr; ++i) sys.right_conditions.emplace_back(ri[i], rv[i]);
    *out = new fv_tpbvp_solution{
        indirect::solve_linear_tpbvp(sys, Mesh(a, b, n), to_options(options))};
  });
}

int fv_tpbvp_dimension(const fv_tpbvp_solution* s) {
  return s == nullptr ? 0 : static_cast<int>(s->solution.components.size());
}
fv_status fv_tpbvp_component(const fv_tpbvp_solution* s, int index, fv_curve** out) {
  return guard([&] {
    need(s, "solution");
    need(out, "out");
    if (index < 0 || index >= static_cast<int>(s->solution.components.size()))
      fail(ErrorKind::Index, "component index out of range");
    *out = new fv_curve{s->solution.components[static_cast<size_t>(index)]};
  });
}
void fv_tpbvp_solution_free(fv_tpbvp_solution* s) { delete s; }

}  // extern "C"

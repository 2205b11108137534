#include "fracvar/direct.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "fracvar/error.hpp"
#include "fracvar/specfun.hpp"

namespace fracvar::direct {

namespace {

// Full node vector x_0..x_n from the interior unknowns.
std::vector<double> with_boundary(const DirectProblem& p, std::span<const double> interior,
                                  int n) {
  require(static_cast<int>(interior.size()) == n - 1,
          "expected n-1 interior unknowns");
  std::vector<double> x(static_cast<size_t>(n) + 1);
  x.front() = p.x_a;
  std::copy(interior.begin(), interior.end(), x.begin() + 1);
  x.back() = p.x_b;
  return x;
}

void check_problem(const DirectProblem& p, int n) {
  require(p.a < p.b, "DirectProblem: need a < b");
  require(p.alpha > 0.0 && p.alpha < 1.0, "DirectProblem: alpha must lie in (0,1)");
  require(n >= 2, "direct method needs n >= 2");
  require(static_cast<bool>(p.lagrangian.L), "DirectProblem: missing Lagrangian");
}

struct NodeState {
  std::vector<double> t, xdot, d;
};

NodeState node_state(const DirectProblem& p, const std::vector<double>& x, int n,
                     const std::vector<double>& w) {
  const double h = (p.b - p.a) / n;
  const double scale = std::pow(h, -p.alpha);
  NodeState s;
  s.t.resize(x.size());
  s.xdot.assign(x.size(), 0.0);
  s.d.resize(x.size());
  for (int i = 0; i <= n; ++i) {
    s.t[static_cast<size_t>(i)] = i == n ? p.b : p.a + i * h;
    if (i > 0) s.xdot[static_cast<size_t>(i)] = (x[static_cast<size_t>(i)] - x[static_cast<size_t>(i - 1)]) / h;
    double acc = 0.0;
    for (int k = 0; k <= i; ++k) acc += w[static_cast<size_t>(k)] * x[static_cast<size_t>(i - k)];
    s.d[static_cast<size_t>(i)] = acc * scale;
  }
  return s;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

std::vector<double> solve_with(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                               const std::vector<double>& rhs) {
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  Eigen::VectorXd x = lu.solve(b);
  return {x.data(), x.data() + x.size()};
}

Eigen::PartialPivLU<Eigen::MatrixXd> factor(const Eigen::MatrixXd& m) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const double rc = lu.rcond();
  if (!(rc > 1e-15) || !std::isfinite(rc)) {
    fail(ErrorKind::Singular, "singular linear system (rcond " + std::to_string(rc) + ")");
  }
  return lu;
}

Eigen::MatrixXd jacobian(const StationaritySystem& sys, const std::vector<double>& x,
                         const std::vector<double>& r0, bool affine) {
  const auto m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd J(m, m);
  std::vector<double> probe = x;
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto ju = static_cast<size_t>(j);
    const double step = affine ? 1.0
                               : std::sqrt(std::numeric_limits<double>::epsilon()) *
                                     (1.0 + std::abs(x[ju]));
    probe[ju] = x[ju] + step;
    const auto r = sys.residual(probe);
    probe[ju] = x[ju];
    const double actual = (x[ju] + step) - x[ju];
    for (Eigen::Index i = 0; i < m; ++i) {
      J(i, j) = (r[static_cast<size_t>(i)] - r0[static_cast<size_t>(i)]) / actual;
    }
  }
  return J;
}

}  // namespace

std::function<double(std::span<const double>)> discretize(const DirectProblem& problem,
                                                          int n) {
  check_problem(problem, n);
  const auto w = ops::gl_weights(problem.alpha, n).w;
  return [problem, n, w](std::span<const double> interior) {
    const auto x = with_boundary(problem, interior, n);
    const auto s = node_state(problem, x, n, w);
    const double h = (problem.b - problem.a) / n;
    double psi = 0.0;
    for (int i = 1; i <= n; ++i) {
      const auto iu = static_cast<size_t>(i);
      psi += problem.lagrangian.L(s.t[iu], x[iu], s.xdot[iu], s.d[iu]);
    }
    return h * psi;
  };
}

StationaritySystem stationarity(const DirectProblem& problem, int n) {
  check_problem(problem, n);
  const auto& lag = problem.lagrangian;
  require(static_cast<bool>(lag.dL_dx) && static_cast<bool>(lag.dL_ddalpha),
          "stationarity: Lagrangian partials missing");
  require(!lag.uses_xdot || static_cast<bool>(lag.dL_dxdot),
          "stationarity: dL/dxdot missing");
  const auto w = ops::gl_weights(problem.alpha, n).w;
  StationaritySystem sys;
  sys.n = n;
  sys.residual = [problem, n, w](std::span<const double> interior) {
    const auto& lag = problem.lagrangian;
    const auto x = with_boundary(problem, interior, n);
    const auto s = node_state(problem, x, n, w);
    const double h = (problem.b - problem.a) / n;
    const double scale = std::pow(h, -problem.alpha);
    std::vector<double> ld(static_cast<size_t>(n) + 1, 0.0);
    std::vector<double> lxd(static_cast<size_t>(n) + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
      const auto iu = static_cast<size_t>(i);
      ld[iu] = lag.dL_ddalpha(s.t[iu], x[iu], s.xdot[iu], s.d[iu]);
      if (lag.uses_xdot) lxd[iu] = lag.dL_dxdot(s.t[iu], x[iu], s.xdot[iu], s.d[iu]);
    }
    std::vector<double> r(static_cast<size_t>(n) - 1);
    for (int i = 1; i < n; ++i) {
      const auto iu = static_cast<size_t>(i);
      double acc = 0.0;
      for (int k = 0; k <= n - i; ++k) acc += w[static_cast<size_t>(k)] * ld[iu + static_cast<size_t>(k)];
      double ri = lag.dL_dx(s.t[iu], x[iu], s.xdot[iu], s.d[iu]) + scale * acc;
      // Term i and term i+1 of Psi both see x_i through the backward difference.
      if (lag.uses_xdot) ri += (lxd[iu] - lxd[iu + 1]) / h;
      r[iu - 1] = ri;
    }
    return r;
  };
  return sys;
}

std::vector<double> solve_dense(const DenseSystem& system) {
  require(system.size >= 1 &&
              system.matrix.size() == static_cast<size_t>(system.size) * static_cast<size_t>(system.size) &&
              system.rhs.size() == static_cast<size_t>(system.size),
          "solve_dense: inconsistent system dimensions");
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      system.matrix.data(), system.size, system.size);
  const auto lu = factor(m);
  auto x = solve_with(lu, system.rhs);
  // One step of iterative refinement.
  Eigen::Map<const Eigen::VectorXd> b(system.rhs.data(), system.size);
  Eigen::Map<Eigen::VectorXd> xv(x.data(), system.size);
  Eigen::VectorXd res = b - m * xv;
  xv += lu.solve(res);
  return x;
}

DirectSolution solve_direct(const DirectProblem& problem, int n, const DirectOptions& opts) {
  check_problem(problem, n);
  require(opts.max_iter >= 1 && opts.newton_tol > 0.0, "solve_direct: bad options");
  const auto sys = stationarity(problem, n);
  const double h = (problem.b - problem.a) / n;

  std::vector<double> x;
  if (opts.initial_guess.empty()) {
    x.resize(static_cast<size_t>(n) - 1);
    for (int i = 1; i < n; ++i) {
      x[static_cast<size_t>(i - 1)] =
          problem.x_a + (problem.x_b - problem.x_a) * (i * h) / (problem.b - problem.a);
    }
  } else {
    require(static_cast<int>(opts.initial_guess.size()) == n - 1,
            "solve_direct: initial guess needs n-1 values");
    x = opts.initial_guess;
  }

  auto finish = [&](int iterations, double norm) {
    return DirectSolution{SampledCurve(Mesh(problem.a, problem.b, n),
                                       with_boundary(problem, x, n)),
                          iterations, norm};
  };

  auto r = sys.residual(x);
  double norm = inf_norm(r);
  if (norm < opts.newton_tol) return finish(0, norm);

  if (opts.linear) {
    const auto lu = factor(jacobian(sys, x, r, true));
    for (int pass = 0; pass < 2; ++pass) {
      const auto dx = solve_with(lu, r);
      for (size_t i = 0; i < x.size(); ++i) x[i] -= dx[i];
      r = sys.residual(x);
    }
    return finish(1, inf_norm(r));
  }

  for (int it = 1; it <= opts.max_iter; ++it) {
    const auto lu = factor(jacobian(sys, x, r, false));
    const auto dx = solve_with(lu, r);
    double lambda = 1.0;
    std::vector<double> trial(x.size());
    std::vector<double> r_trial;
    double trial_norm = 0.0;
    for (int halving = 0; halving <= 30; ++halving) {
      for (size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - lambda * dx[i];
      r_trial = sys.residual(trial);
      trial_norm = inf_norm(r_trial);
      if (std::isfinite(trial_norm) && trial_norm < norm) break;
      lambda *= 0.5;
    }
    if (!std::isfinite(trial_norm)) {
      fail(ErrorKind::NoConvergence, "solve_direct: residual became non-finite");
    }
    x = std::move(trial);
    r = std::move(r_trial);
    norm = trial_norm;
    if (norm < opts.newton_tol) return finish(it, norm);
  }
  char msg[128];
  std::snprintf(msg, sizeof msg, "solve_direct: Newton did not converge in %d iterations (residual %.3g)",
                opts.max_iter, norm);
  fail(ErrorKind::NoConvergence, msg);
}

SampledCurve euler_lagrange_residual(const SampledCurve& curve, const DirectProblem& problem) {
  const Mesh& mesh = curve.mesh();
  const int n = mesh.n();
  require(n >= 2, "euler_lagrange_residual: need n >= 2");
  const auto& lag = problem.lagrangian;
  const double h = mesh.h();
  const auto d = ops::gl_left_all(curve, problem.alpha);

  std::vector<double> xdot(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    if (i == 0) xdot[0] = (curve[1] - curve[0]) / h;
    else if (i == n) xdot[static_cast<size_t>(n)] = (curve[n] - curve[n - 1]) / h;
    else xdot[static_cast<size_t>(i)] = (curve[i + 1] - curve[i - 1]) / (2.0 * h);
  }
  std::vector<double> ld(static_cast<size_t>(n) + 1), lxd(static_cast<size_t>(n) + 1, 0.0),
      lx(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const auto iu = static_cast<size_t>(i);
    const double t = mesh.node(i);
    ld[iu] = lag.dL_ddalpha(t, curve[i], xdot[iu], d[iu]);
    lx[iu] = lag.dL_dx(t, curve[i], xdot[iu], d[iu]);
    if (lag.uses_xdot) lxd[iu] = lag.dL_dxdot(t, curve[i], xdot[iu], d[iu]);
  }
  const auto right = ops::gl_right_all(SampledCurve(mesh, ld), problem.alpha);
  std::vector<double> out(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const auto iu = static_cast<size_t>(i);
    double v = lx[iu] + right[iu];
    if (lag.uses_xdot) {
      double dp;
      if (i == 0) dp = (lxd[1] - lxd[0]) / h;
      else if (i == n) dp = (lxd[iu] - lxd[iu - 1]) / h;
      else dp = (lxd[iu + 1] - lxd[iu - 1]) / (2.0 * h);
      v -= dp;
    }
    out[iu] = v;
  }
  return {mesh, std::move(out)};
}

double example1_target(double t) { return 2.0 / specfun::gamma(2.5) * std::pow(t, 1.5); }

double example3_phi(double t) {
  return 16.0 * specfun::gamma(6.0) / specfun::gamma(5.5) * std::pow(t, 4.5) -
         20.0 * specfun::gamma(4.0) / specfun::gamma(3.5) * std::pow(t, 2.5) +
         5.0 / specfun::gamma(1.5) * std::pow(t, 0.5);
}

double example3_minimizer(double t) { return 16.0 * std::pow(t, 5) - 20.0 * std::pow(t, 3) + 5.0 * t; }

DirectProblem example1_problem() {
  DirectProblem p;
  p.alpha = 0.5;
  p.lagrangian.L = [](double t, double, double, double d) {
    const double g = d - example1_target(t);
    return g * g;
  };
  p.lagrangian.dL_dx = [](double, double, double, double) { return 0.0; };
  p.lagrangian.dL_dxdot = [](double, double, double, double) { return 0.0; };
  p.lagrangian.dL_ddalpha = [](double t, double, double, double d) {
    return 2.0 * (d - example1_target(t));
  };
  return p;
}

DirectProblem example2_problem(double alpha) {
  DirectProblem p;
  p.alpha = alpha;
  p.lagrangian.L = [](double, double, double xdot, double d) { return d - xdot * xdot; };
  p.lagrangian.dL_dx = [](double, double, double, double) { return 0.0; };
  p.lagrangian.dL_dxdot = [](double, double, double xdot, double) { return -2.0 * xdot; };
  p.lagrangian.dL_ddalpha = [](double, double, double, double) { return 1.0; };
  p.lagrangian.uses_xdot = true;
  return p;
}

DirectProblem example3_problem() {
  DirectProblem p;
  p.alpha = 0.5;
  p.lagrangian.L = [](double t, double, double, double d) {
    const double g = d - example3_phi(t);
    return g * g * g * g;
  };
  p.lagrangian.dL_dx = [](double, double, double, double) { return 0.0; };
  p.lagrangian.dL_dxdot = [](double, double, double, double) { return 0.0; };
  p.lagrangian.dL_ddalpha = [](double t, double, double, double d) {
    const double g = d - example3_phi(t);
    return 4.0 * g * g * g;
  };
  return p;
}

DenseSystem example1_system(int n) {
  require(n >= 2, "example1_system: n >= 2");
  const double h = 1.0 / n;
  const double x0 = 0.0;
  const double xn = 1.0;
  const auto w = ops::gl_weights(0.5, n).w;
  std::vector<double> A(w.size());
  for (size_t i = 0; i < w.size(); ++i) A[i] = std::pow(h, 1.5) * w[i];
  auto Ak = [&](int k) { return A[static_cast<size_t>(k)]; };

  DenseSystem s;
  s.size = n - 1;
  s.matrix.assign(static_cast<size_t>(s.size) * static_cast<size_t>(s.size), 0.0);
  s.rhs.assign(static_cast<size_t>(s.size), 0.0);
  for (int j = 1; j < n; ++j) {
    for (int m = 1; m < n; ++m) {
      double acc = 0.0;
      for (int i = std::max(j, m); i <= n; ++i) acc += Ak(i - j) * Ak(i - m);
      s.matrix[static_cast<size_t>(j - 1) * static_cast<size_t>(s.size) + static_cast<size_t>(m - 1)] = acc;
    }
    double b = 0.0;
    double left = 0.0;
    for (int k = 0; k <= n - j; ++k) {
      b += h * h * Ak(k) * example1_target((k + j) * h);
      left += Ak(k) * Ak(k + j);
    }
    s.rhs[static_cast<size_t>(j - 1)] = b - Ak(n - j) * Ak(0) * xn - x0 * left;
  }
  return s;
}

DenseSystem example2_system(int n, double alpha) {
  require(n >= 2, "example2_system: n >= 2");
  require(alpha > 0.0 && alpha < 1.0, "example2_system: alpha in (0,1)");
  const double h = 1.0 / n;
  const double x0 = 0.0;
  const double xn = 1.0;
  const auto w = ops::gl_weights(alpha, n).w;
  DenseSystem s;
  s.size = n - 1;
  s.matrix.assign(static_cast<size_t>(s.size) * static_cast<size_t>(s.size), 0.0);
  s.rhs.assign(static_cast<size_t>(s.size), 0.0);
  for (int i = 1; i < n; ++i) {
    const auto r = static_cast<size_t>(i - 1);
    s.matrix[r * static_cast<size_t>(s.size) + r] = 2.0;
    if (i > 1) s.matrix[r * static_cast<size_t>(s.size) + r - 1] = -1.0;
    if (i < n - 1) s.matrix[r * static_cast<size_t>(s.size) + r + 1] = -1.0;
    double acc = 0.0;
    for (int k = 0; k <= n - i; ++k) acc += w[static_cast<size_t>(k)];
    double b = 0.5 * std::pow(h, 2.0 - alpha) * acc;
    if (i == 1) b += x0;
    if (i == n - 1) b += xn;
    s.rhs[r] = b;
  }
  return s;
}

std::vector<double> example3_residual(std::span<const double> interior, int n) {
  require(n >= 2 && static_cast<int>(interior.size()) == n - 1,
          "example3_residual: need n-1 interior values");
  const double h = 1.0 / n;
  const auto w = ops::gl_weights(0.5, n).w;
  std::vector<double> x(static_cast<size_t>(n) + 1);
  x.front() = 0.0;
  std::copy(interior.begin(), interior.end(), x.begin() + 1);
  x.back() = 1.0;
  std::vector<double> cube(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    double acc = 0.0;
    for (int k = 0; k <= i; ++k) acc += w[static_cast<size_t>(k)] * x[static_cast<size_t>(i - k)];
    const double t = i == n ? 1.0 : i * h;
    const double g = acc / std::sqrt(h) - example3_phi(t);
    cube[static_cast<size_t>(i)] = g * g * g;
  }
  std::vector<double> r(static_cast<size_t>(n) - 1);
  for (int j = 1; j < n; ++j) {
    double acc = 0.0;
    for (int i = j; i <= n; ++i) acc += w[static_cast<size_t>(i - j)] * cube[static_cast<size_t>(i)];
    r[static_cast<size_t>(j - 1)] = acc;
  }
  return r;
}

}  // namespace fracvar::direct

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracvar/operators.hpp"

namespace fracvar::direct {

/// L(t, x, xdot, D^alpha x) and its three partials.
struct LagrangianSpec {
  using Fn = std::function<double(double t, double x, double xdot, double d)>;
  Fn L;
  Fn dL_dx;
  Fn dL_dxdot;
  Fn dL_ddalpha;
  bool uses_xdot = false;
};

/// Minimize int_a^b L dt with x(a) = x_a, x(b) = x_b.
struct DirectProblem {
  double a = 0.0;
  double b = 1.0;
  double x_a = 0.0;
  double x_b = 1.0;
  double alpha = 0.5;
  LagrangianSpec lagrangian;
};

/// Gradient of the discrete functional divided by h, as a function of the
/// n-1 interior unknowns.
struct StationaritySystem {
  int n = 0;
  std::function<std::vector<double>(std::span<const double>)> residual;
};

struct DirectOptions {
  double newton_tol = 1e-10;
  int max_iter = 100;
  bool linear = false;
  /// Interior starting values; empty means the linear interpolant between
  /// the boundary values.
  std::vector<double> initial_guess;
};

struct DirectSolution {
  SampledCurve curve;
  int iterations = 0;
  double residual_norm = 0.0;
};

/// Dense row-major linear system.
struct DenseSystem {
  int size = 0;
  std::vector<double> matrix;
  std::vector<double> rhs;

  double at(int r, int c) const {
    return matrix[static_cast<size_t>(r) * static_cast<size_t>(size) +
                  static_cast<size_t>(c)];
  }
};

/// Psi(x_1..x_{n-1}) = h sum_{i=1..n} L(t_i, x_i, (x_i - x_{i-1})/h, GL_i(x)).
std::function<double(std::span<const double>)> discretize(const DirectProblem& problem,
                                                          int n);

StationaritySystem stationarity(const DirectProblem& problem, int n);

/// Solves the stationarity system. Linear problems take one dense solve plus
/// one refinement step; otherwise damped Newton with a forward-difference
/// Jacobian. Throws ErrorKind::NoConvergence or ErrorKind::Singular.
DirectSolution solve_direct(const DirectProblem& problem, int n,
                            const DirectOptions& opts = {});

std::vector<double> solve_dense(const DenseSystem& system);

/// Node-wise fractional Euler-Lagrange residual
/// dL/dx + D_right^alpha[dL/dD] - d/dt dL/dxdot, with GL operators and central
/// differences on the curve's mesh.
SampledCurve euler_lagrange_residual(const SampledCurve& curve,
                                     const DirectProblem& problem);

// Catalog problems on [0,1] with x(0) = 0, x(1) = 1.

/// L = (D^0.5 x - 2/Gamma(2.5) t^1.5)^2, minimizer t^2.
DirectProblem example1_problem();
/// L = D^alpha x - xdot^2.
DirectProblem example2_problem(double alpha = 0.5);
/// L = (D^0.5 x - phi(t))^4, minimizer 16t^5 - 20t^3 + 5t.
DirectProblem example3_problem();

double example1_target(double t);
/// D^0.5 of 16t^5 - 20t^3 + 5t by the power rule.
double example3_phi(double t);
double example3_minimizer(double t);

/// Normal equations of example 1 in the A_i = (-1)^i h^1.5 binom(0.5, i) form.
DenseSystem example1_system(int n);
/// Tridiagonal system of example 2.
DenseSystem example2_system(int n, double alpha = 0.5);
/// sum_{i=j..n} w_{i-j} (h^-0.5 sum_k w_k x_{i-k} - phi(t_i))^3, j = 1..n-1.
std::vector<double> example3_residual(std::span<const double> interior, int n);

}  // namespace fracvar::direct

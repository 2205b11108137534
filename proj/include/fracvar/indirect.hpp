#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fracvar/expansions.hpp"
#include "fracvar/operators.hpp"

namespace fracvar::indirect {

/// y' = rhs(t, y) with split boundary conditions (component index, value).
struct TpBvpSystem {
  int m = 0;
  std::function<std::vector<double>(double t, std::span<const double> y)> rhs;
  std::vector<std::pair<int, double>> left_conditions;
  std::vector<std::pair<int, double>> right_conditions;
};

struct TpBvpOptions {
  /// Collocation starts at a + eps.
  double eps = 1e-4;
  /// Geometric nodes inserted between a + eps and the first mesh node.
  int grading_levels = 40;
  /// Cell k (k >= 1) of the mesh is split into ceil(subdivision / k) parts.
  int subdivision = 8;
  /// Impose left conditions at a + eps through y(a+eps) - eps f = value
  /// instead of y(a+eps) = value.
  bool taylor_proxy = true;
};

struct TpBvpSolution {
  Mesh mesh;
  /// One curve per state component. Node 0 is the linear extension
  /// y(a+eps) - eps f(a+eps, y).
  std::vector<SampledCurve> components;
  /// Number of collocation nodes actually used.
  int collocation_nodes = 0;
};

/// Midpoint box scheme for affine systems. Throws ErrorKind::NonAffine when
/// rhs fails the affinity probe and ErrorKind::Singular when the collocation
/// matrix cannot be factored.
TpBvpSolution solve_linear_tpbvp(const TpBvpSystem& system, const Mesh& mesh,
                                 const TpBvpOptions& opts = {});

/// Closed-form parameters of the two indirect reductions of example 2.
struct ClosedFormCoeffs {
  double alpha = 0.0;
  int N = 0;
  double M1 = 0.0;
  double M2 = 0.0;
  double M = 0.0;
  /// C(alpha,p) / (2p(2-p-alpha)), p = 2..N (moment route only).
  std::vector<double> Cp_terms;
};

/// (-1)^{n-1} alpha / (n! (n-alpha) Gamma(1-alpha)).
double integer_coefficient(int n, double alpha);

/// -(1-t)^{2-alpha}/(2Gamma(3-alpha)) + (1 - 1/(2Gamma(3-alpha))) t + 1/(2Gamma(3-alpha))
double analytic_solution_example2(double alpha, double t);
/// t^alpha / Gamma(alpha+1)
double exact_solution_example4(double alpha, double t);

ClosedFormCoeffs example2_integer_coeffs(double alpha, int N);
ClosedFormCoeffs example2_moment_coeffs(double alpha, int N);

/// x(t) = M1 t^{2-alpha} + M2 t.
RealFn solve_example2_integer(double alpha, int N);
/// Same curve with all derivatives, for residual checks.
expansions::DerivativeBundle example2_integer_bundle(double alpha, int N);

/// x(t) = M t^{2-alpha} - sum_p Cp_p t^p + (1 - M + sum_p Cp_p) t.
RealFn solve_example2_moment_closed(double alpha, int N);
RealFn solve_example2_moment_closed_derivative(double alpha, int N);

/// State layout for both systems: x, V_2..V_N, lambda_1, lambda_2..lambda_N.
TpBvpSystem assemble_tpbvp_example2(double alpha, int N);
TpBvpSystem assemble_tpbvp_example4(double alpha, int N);

/// Index helpers for the layout above.
inline int state_x() { return 0; }
inline int state_v(int p) { return p - 1; }
inline int state_lambda(int N, int p) { return N + p - 1; }

/// L(t, x, x', ..., x^{(N)}) given by its partials: partial(k, t, d) is
/// dL/dx^{(k)} at the derivative vector d = (x, x', ..., x^{(N)}).
struct HigherOrderLagrangian {
  int order = 0;
  std::function<double(int k, double t, std::span<const double> d)> partial;
};

/// t -> sum_k (-1)^k d^k/dt^k [dL/dx^{(k)}] with analytic inner partials and
/// central differences of step h for the outer derivatives.
RealFn higher_order_el_residual(const expansions::DerivativeBundle& curve,
                                const HigherOrderLagrangian& lagrangian,
                                double h = 1e-3);

/// sum_{n=0..N} C(n,alpha) t^{n-alpha} x^{(n)} - xdot^2.
HigherOrderLagrangian example2_integer_lagrangian(double alpha, int N);

}  // namespace fracvar::indirect

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracvar/operators.hpp"
#include "fracvar/quadrature.hpp"

namespace fracvar::expansions {

/// Coefficients A(alpha,N), B(alpha,N) and C(alpha,p), p = 2..N, of the
/// moment expansion.
struct MomentCoeffs {
  double alpha = 0.0;
  int N = 0;
  double A = 0.0;
  double B = 0.0;
  std::vector<double> C;  // C[p - 2] holds C(alpha, p)

  double c(int p) const { return C[static_cast<size_t>(p - 2)]; }
};

/// Riemann-Liouville normalization: C(alpha,p) = Gamma(p-1+alpha) /
/// (Gamma(2-alpha) Gamma(alpha-1) (p-1)!). N >= 1; for N = 1 the A sum and C
/// are empty.
MomentCoeffs moment_coeffs(double alpha, int N);

/// Hadamard normalization: C(alpha,p) = Gamma(p+alpha-1) /
/// (Gamma(-alpha) Gamma(1+alpha) (p-1)!). A and B as in the RL case.
MomentCoeffs hadamard_moment_coeffs(double alpha, int N);

/// p-th summand of the A series, Gamma(p-1+alpha)/(Gamma(alpha)(p-1)!), p >= 2.
double a_series_term(double alpha, int p);
/// p-th summand of the B series, Gamma(p-1+alpha)/(Gamma(alpha-1) p!), p >= 1.
double b_series_term(double alpha, int p);

/// Table of B(alpha, N); rows follow `alphas`, columns follow `Ns`.
std::vector<std::vector<double>> b_table(std::span<const double> alphas,
                                         std::span<const int> Ns);

/// Caller-supplied analytic derivatives: eval(k, t) = x^{(k)}(t), k <= max_order.
struct DerivativeBundle {
  std::function<double(int, double)> eval;
  int max_order = 0;

  double operator()(int k, double t) const;
  RealFn function(int k) const;
};

// --- integer-order expansions -------------------------------------------

/// sum_{k=0..N} (-1)^{k-1} alpha x^{(k)}(t) / (k!(k-alpha)Gamma(1-alpha)) (t-a)^{k-alpha}
double expand_integer_left(const DerivativeBundle& x, double alpha, int N,
                           double t, double a);
/// sum_{k=0..N} -alpha x^{(k)}(t) / (k!(k-alpha)Gamma(1-alpha)) (b-t)^{k-alpha}
double expand_integer_right(const DerivativeBundle& x, double alpha, int N,
                            double t, double b);

// --- moment expansions ---------------------------------------------------

/// V_p(t) = (1-p) int_a^t (tau-a)^{p-2} x(tau) dtau.
double moments_vp(const RealFn& x, int p, double t, double a, int quad_n,
                  Quadrature rule = Quadrature::Trapezoid);
/// W_p(t) = (1-p) int_t^b (b-tau)^{p-2} x(tau) dtau.
double moments_wp(const RealFn& x, int p, double t, double b, int quad_n,
                  Quadrature rule = Quadrature::Trapezoid);

/// A (t-a)^-alpha x + B (t-a)^{1-alpha} xdot - sum_p C_p (t-a)^{1-p-alpha} V_p
double expand_moment_left(const RealFn& x, const RealFn& xdot,
                          const MomentCoeffs& coeffs, double t, double a,
                          int quad_n, Quadrature rule = Quadrature::Trapezoid);
/// A (b-t)^-alpha x - B (b-t)^{1-alpha} xdot - sum_p C_p (b-t)^{1-p-alpha} W_p
double expand_moment_right(const RealFn& x, const RealFn& xdot,
                           const MomentCoeffs& coeffs, double t, double b,
                           int quad_n, Quadrature rule = Quadrature::Trapezoid);
/// Left Caputo: the RL moment expansion minus x(a)/(t-a)^alpha.
double expand_caputo_left(const RealFn& x, const RealFn& xdot,
                          const MomentCoeffs& coeffs, double t, double a,
                          int quad_n, Quadrature rule = Quadrature::Trapezoid);

/// Variant that drops the B term (B taken as its N -> infinity limit, 0).
/// Kept for comparison only: at finite N it is markedly less accurate than
/// expand_moment_left, most visibly as alpha -> 1.
double expand_atanackovic(const RealFn& x, const MomentCoeffs& coeffs, double t,
                          double a, int quad_n,
                          Quadrature rule = Quadrature::Trapezoid);

// --- Hadamard ------------------------------------------------------------

enum class HadamardDirection { Derivative, Integral };

/// sum_{k=0..N} S(+-alpha, k) t^k x^{(k)}(t), terminal 0.
double hadamard_expand_integer(const DerivativeBundle& x, double alpha, int N,
                               double t, HadamardDirection direction);

/// Log-moment V_p(t) = (1-p) int_a^t (ln(tau/a))^{p-2} x(tau)/tau dtau.
double hadamard_moments_vp(const RealFn& x, int p, double t, double a,
                           int quad_n, Quadrature rule = Quadrature::Trapezoid);
/// W_p(t) = (1-p) int_t^b (ln(b/tau))^{p-2} x(tau)/tau dtau.
double hadamard_moments_wp(const RealFn& x, int p, double t, double b,
                           int quad_n, Quadrature rule = Quadrature::Trapezoid);

/// A s^-alpha x + B s^{1-alpha} t xdot - sum_p C_p s^{1-alpha-p} V_p with
/// s = ln(t/a) and the Hadamard coefficients.
double hadamard_expand_moment(const RealFn& x, const RealFn& xdot,
                              const MomentCoeffs& hcoeffs, double t, double a,
                              int quad_n, Quadrature rule = Quadrature::Trapezoid);
/// A s^-alpha x - B s^{1-alpha} t xdot - sum_p C_p s^{1-alpha-p} W_p with
/// s = ln(b/t).
double hadamard_expand_moment_right(const RealFn& x, const RealFn& xdot,
                                    const MomentCoeffs& hcoeffs, double t,
                                    double b, int quad_n,
                                    Quadrature rule = Quadrature::Trapezoid);

// --- truncation error bounds ---------------------------------------------

/// M (t-a)^{N+1-alpha} / (Gamma(1-alpha) (N+1)!), M = max |x^{(N+1)}| on [a,t].
double bound_integer(double M, double alpha, int N, double t, double a);
/// L2 e^{(1-alpha)^2+1-alpha} / (Gamma(2-alpha)(1-alpha)N^{1-alpha}) (t-a)^{2-alpha},
/// L2 = max |x''| on [a,t].
double bound_moment(double L2, double alpha, int N, double t, double a);
/// Lmax e^{(1-alpha)^2+1-alpha} / (Gamma(2-alpha)(1-alpha)N^{1-alpha})
/// (ln(t/a))^{1-alpha} (t-a), Lmax = max |xdot + tau xddot| on [a,t].
double bound_hadamard(double Lmax, double alpha, int N, double t, double a);

}  // namespace fracvar::expansions

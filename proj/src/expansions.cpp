#include "fracvar/expansions.hpp"

#include <cmath>

#include "fracvar/error.hpp"
#include "fracvar/specfun.hpp"

namespace fracvar::expansions {

namespace {

void check_alpha(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
}

// r_p = Gamma(p-1+alpha)/(p-1)! for p = 1..N, via r_{p+1} = r_p (p-1+alpha)/p.
std::vector<double> gamma_ratios(double alpha, int N) {
  std::vector<double> r(static_cast<size_t>(N) + 1, 0.0);
  if (N >= 1) r[1] = specfun::gamma(alpha);
  for (int p = 1; p < N; ++p) {
    r[static_cast<size_t>(p + 1)] = r[static_cast<size_t>(p)] * (p - 1 + alpha) / p;
  }
  return r;
}

MomentCoeffs build(double alpha, int N, double c_normalizer) {
  check_alpha(alpha);
  require(N >= 1, "moment coefficients need N >= 1");
  const auto r = gamma_ratios(alpha, N);
  const double g_alpha = specfun::gamma(alpha);
  const double g_alpha_m1 = specfun::gamma(alpha - 1.0);

  MomentCoeffs m;
  m.alpha = alpha;
  m.N = N;
  double a_sum = 1.0;
  for (int p = 2; p <= N; ++p) a_sum += r[static_cast<size_t>(p)] / g_alpha;
  double b_sum = 1.0;
  for (int p = 1; p <= N; ++p) b_sum += r[static_cast<size_t>(p)] / (g_alpha_m1 * p);
  m.A = a_sum / specfun::gamma(1.0 - alpha);
  m.B = b_sum / specfun::gamma(2.0 - alpha);
  for (int p = 2; p <= N; ++p) m.C.push_back(r[static_cast<size_t>(p)] / c_normalizer);
  return m;
}

void check_quad(int quad_n) { require(quad_n >= 1, "quad_n must be positive"); }

}  // namespace

MomentCoeffs moment_coeffs(double alpha, int N) {
  check_alpha(alpha);
  return build(alpha, N, specfun::gamma(2.0 - alpha) * specfun::gamma(alpha - 1.0));
}

MomentCoeffs hadamard_moment_coeffs(double alpha, int N) {
  check_alpha(alpha);
  return build(alpha, N, specfun::gamma(-alpha) * specfun::gamma(1.0 + alpha));
}

double a_series_term(double alpha, int p) {
  check_alpha(alpha);
  require(p >= 2, "a_series_term: p >= 2");
  return gamma_ratios(alpha, p)[static_cast<size_t>(p)] / specfun::gamma(alpha);
}

double b_series_term(double alpha, int p) {
  check_alpha(alpha);
  require(p >= 1, "b_series_term: p >= 1");
  return gamma_ratios(alpha, p)[static_cast<size_t>(p)] /
         (specfun::gamma(alpha - 1.0) * p);
}

std::vector<std::vector<double>> b_table(std::span<const double> alphas,
                                         std::span<const int> Ns) {
  std::vector<std::vector<double>> table;
  table.reserve(alphas.size());
  for (double alpha : alphas) {
    std::vector<double> row;
    row.reserve(Ns.size());
    for (int N : Ns) row.push_back(moment_coeffs(alpha, N).B);
    table.push_back(std::move(row));
  }
  return table;
}

double DerivativeBundle::operator()(int k, double t) const {
  require(k >= 0 && k <= max_order,
          "DerivativeBundle: derivative order not available");
  return eval(k, t);
}

RealFn DerivativeBundle::function(int k) const {
  require(k >= 0 && k <= max_order,
          "DerivativeBundle: derivative order not available");
  return [f = eval, k](double t) { return f(k, t); };
}

double expand_integer_left(const DerivativeBundle& x, double alpha, int N,
                           double t, double a) {
  check_alpha(alpha);
  require(N >= 0, "expand_integer_left: N >= 0");
  if (!(t > a)) fail(ErrorKind::Domain, "expand_integer_left: need t > a");
  const double g = specfun::gamma(1.0 - alpha);
  double sum = 0.0;
  double factorial = 1.0;
  for (int k = 0; k <= N; ++k) {
    if (k > 0) factorial *= k;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^{k-1}
    sum += sign * alpha * x(k, t) / (factorial * (k - alpha) * g) *
           std::pow(t - a, k - alpha);
  }
  return sum;
}

double expand_integer_right(const DerivativeBundle& x, double alpha, int N,
                            double t, double b) {
  check_alpha(alpha);
  require(N >= 0, "expand_integer_right: N >= 0");
  if (!(t < b)) fail(ErrorKind::Domain, "expand_integer_right: need t < b");
  const double g = specfun::gamma(1.0 - alpha);
  double sum = 0.0;
  double factorial = 1.0;
  for (int k = 0; k <= N; ++k) {
    if (k > 0) factorial *= k;
    sum += -alpha * x(k, t) / (factorial * (k - alpha) * g) *
           std::pow(b - t, k - alpha);
  }
  return sum;
}

double moments_vp(const RealFn& x, int p, double t, double a, int quad_n,
                  Quadrature rule) {
  require(p >= 2, "moments_vp: p >= 2");
  check_quad(quad_n);
  if (t < a) fail(ErrorKind::Domain, "moments_vp: need t >= a");
  const double integral = integrate(
      [&](double tau) { return std::pow(tau - a, p - 2) * x(tau); }, a, t,
      quad_n, rule);
  return (1.0 - p) * integral;
}

double moments_wp(const RealFn& x, int p, double t, double b, int quad_n,
                  Quadrature rule) {
  require(p >= 2, "moments_wp: p >= 2");
  check_quad(quad_n);
  if (t > b) fail(ErrorKind::Domain, "moments_wp: need t <= b");
  const double integral = integrate(
      [&](double tau) { return std::pow(b - tau, p - 2) * x(tau); }, t, b,
      quad_n, rule);
  return (1.0 - p) * integral;
}

double expand_moment_left(const RealFn& x, const RealFn& xdot,
                          const MomentCoeffs& coeffs, double t, double a,
                          int quad_n, Quadrature rule) {
  if (!(t > a)) fail(ErrorKind::Domain, "expand_moment_left: need t > a");
  const double alpha = coeffs.alpha;
  const double d = t - a;
  double s = coeffs.A * std::pow(d, -alpha) * x(t) +
             coeffs.B * std::pow(d, 1.0 - alpha) * xdot(t);
  for (int p = 2; p <= coeffs.N; ++p) {
    s -= coeffs.c(p) * std::pow(d, 1.0 - p - alpha) *
         moments_vp(x, p, t, a, quad_n, rule);
  }
  return s;
}

double expand_moment_right(const RealFn& x, const RealFn& xdot,
                           const MomentCoeffs& coeffs, double t, double b,
                           int quad_n, Quadrature rule) {
  if (!(t < b)) fail(ErrorKind::Domain, "expand_moment_right: need t < b");
  const double alpha = coeffs.alpha;
  const double d = b - t;
  double s = coeffs.A * std::pow(d, -alpha) * x(t) -
             coeffs.B * std::pow(d, 1.0 - alpha) * xdot(t);
  for (int p = 2; p <= coeffs.N; ++p) {
    s -= coeffs.c(p) * std::pow(d, 1.0 - p - alpha) *
         moments_wp(x, p, t, b, quad_n, rule);
  }
  return s;
}

double expand_caputo_left(const RealFn& x, const RealFn& xdot,
                          const MomentCoeffs& coeffs, double t, double a,
                          int quad_n, Quadrature rule) {
  const double rl = expand_moment_left(x, xdot, coeffs, t, a, quad_n, rule);
  return rl - x(a) / (std::pow(t - a, coeffs.alpha) * specfun::gamma(1.0 - coeffs.alpha));
}

double expand_atanackovic(const RealFn& x, const MomentCoeffs& coeffs, double t,
                          double a, int quad_n, Quadrature rule) {
  if (!(t > a)) fail(ErrorKind::Domain, "expand_atanackovic: need t > a");
  const double alpha = coeffs.alpha;
  const double d = t - a;
  double s = coeffs.A * std::pow(d, -alpha) * x(t);
  for (int p = 2; p <= coeffs.N; ++p) {
    s -= coeffs.c(p) * std::pow(d, 1.0 - p - alpha) *
         moments_vp(x, p, t, a, quad_n, rule);
  }
  return s;
}

double hadamard_expand_integer(const DerivativeBundle& x, double alpha, int N,
                               double t, HadamardDirection direction) {
  require(N >= 0, "hadamard_expand_integer: N >= 0");
  if (!(t > 0.0)) fail(ErrorKind::Domain, "hadamard_expand_integer: need t > 0");
  const double order = direction == HadamardDirection::Derivative ? alpha : -alpha;
  double s = 0.0;
  double tk = 1.0;
  for (int k = 0; k <= N; ++k) {
    if (k > 0) tk *= t;
    s += specfun::stirling_function(order, k) * tk * x(k, t);
  }
  return s;
}

double hadamard_moments_vp(const RealFn& x, int p, double t, double a,
                           int quad_n, Quadrature rule) {
  require(p >= 2, "hadamard_moments_vp: p >= 2");
  check_quad(quad_n);
  require(a > 0.0, "hadamard_moments_vp: need a > 0");
  if (t < a) fail(ErrorKind::Domain, "hadamard_moments_vp: need t >= a");
  const double integral = integrate(
      [&](double tau) { return std::pow(std::log(tau / a), p - 2) * x(tau) / tau; },
      a, t, quad_n, rule);
  return (1.0 - p) * integral;
}

double hadamard_moments_wp(const RealFn& x, int p, double t, double b,
                           int quad_n, Quadrature rule) {
  require(p >= 2, "hadamard_moments_wp: p >= 2");
  check_quad(quad_n);
  require(t > 0.0, "hadamard_moments_wp: need t > 0");
  if (t > b) fail(ErrorKind::Domain, "hadamard_moments_wp: need t <= b");
  const double integral = integrate(
      [&](double tau) { return std::pow(std::log(b / tau), p - 2) * x(tau) / tau; },
      t, b, quad_n, rule);
  return (1.0 - p) * integral;
}

double hadamard_expand_moment(const RealFn& x, const RealFn& xdot,
                              const MomentCoeffs& hcoeffs, double t, double a,
                              int quad_n, Quadrature rule) {
  require(a > 0.0, "hadamard_expand_moment: need a > 0");
  if (!(t > a)) fail(ErrorKind::Domain, "hadamard_expand_moment: need t > a");
  const double alpha = hcoeffs.alpha;
  const double s = std::log(t / a);
  double v = hcoeffs.A * std::pow(s, -alpha) * x(t) +
             hcoeffs.B * std::pow(s, 1.0 - alpha) * t * xdot(t);
  for (int p = 2; p <= hcoeffs.N; ++p) {
    v -= hcoeffs.c(p) * std::pow(s, 1.0 - alpha - p) *
         hadamard_moments_vp(x, p, t, a, quad_n, rule);
  }
  return v;
}

double hadamard_expand_moment_right(const RealFn& x, const RealFn& xdot,
                                    const MomentCoeffs& hcoeffs, double t,
                                    double b, int quad_n, Quadrature rule) {
  require(t > 0.0, "hadamard_expand_moment_right: need t > 0");
  if (!(t < b)) fail(ErrorKind::Domain, "hadamard_expand_moment_right: need t < b");
  const double alpha = hcoeffs.alpha;
  const double s = std::log(b / t);
  double v = hcoeffs.A * std::pow(s, -alpha) * x(t) -
             hcoeffs.B * std::pow(s, 1.0 - alpha) * t * xdot(t);
  for (int p = 2; p <= hcoeffs.N; ++p) {
    v -= hcoeffs.c(p) * std::pow(s, 1.0 - alpha - p) *
         hadamard_moments_wp(x, p, t, b, quad_n, rule);
  }
  return v;
}

double bound_integer(double M, double alpha, int N, double t, double a) {
  check_alpha(alpha);
  require(N >= 0 && t >= a, "bound_integer: need N >= 0 and t >= a");
  double factorial = 1.0;
  for (int k = 2; k <= N + 1; ++k) factorial *= k;
  return M * std::pow(t - a, N + 1 - alpha) /
         (specfun::gamma(1.0 - alpha) * factorial);
}

namespace {

double moment_bound_factor(double alpha, int N) {
  check_alpha(alpha);
  require(N >= 1, "moment bounds need N >= 1");
  const double e = 1.0 - alpha;
  return std::exp(e * e + e) / (specfun::gamma(2.0 - alpha) * e * std::pow(N, e));
}

}  // namespace

double bound_moment(double L2, double alpha, int N, double t, double a) {
  require(t >= a, "bound_moment: need t >= a");
  return L2 * moment_bound_factor(alpha, N) * std::pow(t - a, 2.0 - alpha);
}

double bound_hadamard(double Lmax, double alpha, int N, double t, double a) {
  require(a > 0.0 && t >= a, "bound_hadamard: need 0 < a <= t");
  return Lmax * moment_bound_factor(alpha, N) *
         std::pow(std::log(t / a), 1.0 - alpha) * (t - a);
}

}  // namespace fracvar::expansions

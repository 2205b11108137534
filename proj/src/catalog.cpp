#include "fracvar/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "fracvar/error.hpp"
#include "fracvar/operators.hpp"
#include "fracvar/specfun.hpp"

namespace fracvar::catalog {

namespace {

TestFunction power(const std::string& id, int m) {
  TestFunction f;
  f.id = id;
  f.derivs.max_order = 64;
  f.derivs.eval = [m](int k, double t) {
    if (k > m) return 0.0;
    double c = 1.0;
    for (int j = 0; j < k; ++j) c *= m - j;
    return c * std::pow(t, m - k);
  };
  f.rl_exact = [m](double alpha, double t) { return ops::rl_power_exact(m, alpha, t, 0.0); };
  // t^m = e^{m s} with s = ln t.
  f.hadamard_exact = [m](double alpha, double t) {
    const double s = std::log(t);
    return std::pow(s, -alpha) * specfun::mittag_leffler(1.0, 1.0 - alpha, m * s);
  };
  f.hadamard0_exact = [m](double alpha, double t) { return std::pow(m, alpha) * std::pow(t, m); };
  return f;
}

}  // namespace

TestFunction get(const std::string& id) {
  if (id == "t2") return power(id, 2);
  if (id == "t4") return power(id, 4);
  if (id == "exp2t") {
    TestFunction f;
    f.id = id;
    f.derivs.max_order = 64;
    f.derivs.eval = [](int k, double t) { return std::pow(2.0, k) * std::exp(2.0 * t); };
    f.rl_exact = [](double alpha, double t) { return ops::rl_exp_exact(2.0, alpha, t); };
    return f;
  }
  if (id == "lnt") {
    TestFunction f;
    f.id = id;
    f.derivs.max_order = 64;
    f.derivs.eval = [](int k, double t) {
      if (k == 0) return std::log(t);
      double c = 1.0;
      for (int j = 1; j < k; ++j) c *= j;
      return (k % 2 == 1 ? c : -c) / std::pow(t, k);
    };
    f.hadamard_exact = [](double alpha, double t) {
      return ops::hadamard_logpow_exact(1.0, alpha, t);
    };
    return f;
  }
  fail(ErrorKind::InvalidArgument, "unknown test function '" + id + "'");
}

std::vector<std::string> ids() { return {"t2", "t4", "exp2t", "lnt"}; }

}  // namespace fracvar::catalog

namespace fracvar::catalog {

std::vector<BoundRow> bound_sweep(const TestFunction& f, BoundMethod method, double alpha,
                                  int N, const BoundSweepOptions& opts) {
  require(opts.grid >= 1 && opts.quad_n >= 1 && opts.samples >= 2,
          "bound_sweep: grid, quad_n and samples must be positive");
  require(N >= 1, "bound_sweep: N >= 1");
  const bool hadamard = method == BoundMethod::Hadamard;
  const auto& exact = hadamard ? f.hadamard_exact : f.rl_exact;
  require(static_cast<bool>(exact), "bound_sweep: no exact derivative for '" + f.id + "'");
  const double a = hadamard ? 1.0 : 0.0;
  const double b = a + 1.0;

  // Integrand of the maximum in each bound.
  RealFn gauge;
  switch (method) {
    case BoundMethod::Integer:
      gauge = [&f, N](double s) { return std::abs(f.derivs(N + 1, s)); };
      break;
    case BoundMethod::Moment:
      gauge = [&f](double s) { return std::abs(f.derivs(2, s)); };
      break;
    case BoundMethod::Hadamard:
      gauge = [&f](double s) { return std::abs(f.derivs(1, s) + s * f.derivs(2, s)); };
      break;
  }
  const auto x = f.derivs.function(0);
  const auto xdot = f.derivs.function(1);
  const auto coeffs = hadamard ? expansions::hadamard_moment_coeffs(alpha, N)
                               : expansions::moment_coeffs(alpha, N);

  std::vector<BoundRow> rows;
  double running_max = 0.0;
  double last_t = a;
  for (int i = 1; i <= opts.grid; ++i) {
    const double t = i == opts.grid ? b : a + i * (b - a) / opts.grid;
    for (int k = 0; k <= opts.samples; ++k) {
      const double s = last_t + (t - last_t) * k / opts.samples;
      running_max = std::max(running_max, gauge(s));
    }
    last_t = t;
    double approx = 0.0;
    double bound = 0.0;
    switch (method) {
      case BoundMethod::Integer:
        approx = expansions::expand_integer_left(f.derivs, alpha, N, t, a);
        bound = expansions::bound_integer(running_max, alpha, N, t, a);
        break;
      case BoundMethod::Moment:
        approx = expansions::expand_moment_left(x, xdot, coeffs, t, a, opts.quad_n,
                                                Quadrature::GaussLegendre);
        bound = expansions::bound_moment(running_max, alpha, N, t, a);
        break;
      case BoundMethod::Hadamard:
        approx = expansions::hadamard_expand_moment(x, xdot, coeffs, t, a, opts.quad_n,
                                                    Quadrature::GaussLegendre);
        bound = expansions::bound_hadamard(running_max, alpha, N, t, a);
        break;
    }
    const double ex = exact(alpha, t);
    const double err = std::abs(approx - ex);
    rows.push_back({t, err, bound, err <= bound + kBoundSlack * (1.0 + std::abs(ex))});
  }
  return rows;
}

}  // namespace fracvar::catalog

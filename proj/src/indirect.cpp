#include "fracvar/indirect.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "fracvar/error.hpp"
#include "fracvar/specfun.hpp"

namespace fracvar::indirect {

namespace {

struct AffineSample {
  Eigen::MatrixXd M;
  Eigen::VectorXd g;
};

AffineSample probe(const TpBvpSystem& sys, double t) {
  const int m = sys.m;
  std::vector<double> y(static_cast<size_t>(m), 0.0);
  const auto g0 = sys.rhs(t, y);
  require(static_cast<int>(g0.size()) == m, "TpBvpSystem: rhs returned wrong dimension");
  AffineSample s{Eigen::MatrixXd(m, m), Eigen::VectorXd(m)};
  for (int i = 0; i < m; ++i) s.g(i) = g0[static_cast<size_t>(i)];
  for (int j = 0; j < m; ++j) {
    y[static_cast<size_t>(j)] = 1.0;
    const auto col = sys.rhs(t, y);
    y[static_cast<size_t>(j)] = 0.0;
    for (int i = 0; i < m; ++i) s.M(i, j) = col[static_cast<size_t>(i)] - s.g(i);
  }
  return s;
}

void check_affine(const TpBvpSystem& sys, double t) {
  const auto s = probe(sys, t);
  const int m = sys.m;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> y(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      const double sign = (i + trial) % 2 == 0 ? 1.0 : -1.0;
      y[static_cast<size_t>(i)] = sign * (0.5 + 0.75 * trial + 0.1 * i);
    }
    const auto f = sys.rhs(t, y);
    Eigen::Map<const Eigen::VectorXd> yv(y.data(), m);
    const Eigen::VectorXd lin = s.M * yv + s.g;
    for (int i = 0; i < m; ++i) {
      const double scale = 1.0 + std::abs(f[static_cast<size_t>(i)]) +
                           s.M.row(i).cwiseAbs().dot(yv.cwiseAbs()) + std::abs(s.g(i));
      if (!(std::abs(f[static_cast<size_t>(i)] - lin(i)) <= 1e-8 * scale)) {
        fail(ErrorKind::NonAffine,
             "solve_linear_tpbvp: rhs is not affine in the state (component " +
                 std::to_string(i) + ", t = " + std::to_string(t) + ")");
      }
    }
  }
}

void check_conditions(const TpBvpSystem& sys) {
  require(sys.m >= 1 && static_cast<bool>(sys.rhs), "TpBvpSystem: empty system");
  require(static_cast<int>(sys.left_conditions.size() + sys.right_conditions.size()) == sys.m,
          "TpBvpSystem: need exactly m boundary conditions");
  for (const auto* side : {&sys.left_conditions, &sys.right_conditions}) {
    std::set<int> seen;
    for (const auto& [idx, value] : *side) {
      require(idx >= 0 && idx < sys.m, "TpBvpSystem: condition index out of range");
      require(seen.insert(idx).second, "TpBvpSystem: duplicate condition index");
      require(std::isfinite(value), "TpBvpSystem: non-finite boundary value");
    }
  }
}

// Collocation nodes plus the position of every mesh node 1..n among them.
std::pair<std::vector<double>, std::vector<size_t>> build_grid(const Mesh& mesh,
                                                                const TpBvpOptions& o) {
  const double a = mesh.a();
  const double h = mesh.h();
  const int n = mesh.n();
  std::vector<double> nodes{a + o.eps};
  if (o.eps > 0.0 && o.grading_levels > 1) {
    const double r = std::pow(h / o.eps, 1.0 / o.grading_levels);
    for (int k = 1; k < o.grading_levels; ++k) nodes.push_back(a + o.eps * std::pow(r, k));
  }
  for (int k = 1; k <= n; ++k) {
    nodes.push_back(mesh.node(k));
    if (k < n && o.subdivision > 0) {
      const int parts = (o.subdivision + k - 1) / k;
      for (int q = 1; q < parts; ++q) nodes.push_back(mesh.node(k) + q * h / parts);
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<size_t> base(static_cast<size_t>(n) + 1, 0);
  for (int k = 1; k <= n; ++k) {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), mesh.node(k));
    base[static_cast<size_t>(k)] = static_cast<size_t>(it - nodes.begin());
  }
  return {nodes, base};
}

}  // namespace

TpBvpSolution solve_linear_tpbvp(const TpBvpSystem& sys, const Mesh& mesh,
                                 const TpBvpOptions& opts) {
  check_conditions(sys);
  require(opts.eps >= 0.0 && opts.eps < mesh.h(), "solve_linear_tpbvp: need 0 <= eps < h");
  require(opts.grading_levels >= 0 && opts.subdivision >= 0,
          "solve_linear_tpbvp: grading parameters must be nonnegative");
  const int m = sys.m;
  const auto [nodes, base] = build_grid(mesh, opts);
  const auto K = static_cast<int>(nodes.size());

  check_affine(sys, nodes.front());
  check_affine(sys, 0.5 * (nodes.front() + nodes.back()));
  check_affine(sys, nodes.back());

  const int dim = m * K;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(K) * static_cast<size_t>(2 * m * m + 2));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  int row = 0;

  const double d = opts.taylor_proxy ? nodes.front() - mesh.a() : 0.0;
  {
    const auto s0 = probe(sys, nodes.front());
    for (const auto& [i, v] : sys.left_conditions) {
      for (int c = 0; c < m; ++c) {
        const double val = (c == i ? 1.0 : 0.0) - d * s0.M(i, c);
        if (val != 0.0) trip.emplace_back(row, c, val);
      }
      rhs(row) = v + d * s0.g(i);
      ++row;
    }
  }
  for (int j = 0; j + 1 < K; ++j) {
    const double h = nodes[static_cast<size_t>(j + 1)] - nodes[static_cast<size_t>(j)];
    const double tm = 0.5 * (nodes[static_cast<size_t>(j)] + nodes[static_cast<size_t>(j + 1)]);
    const auto s = probe(sys, tm);
    for (int c = 0; c < m; ++c) {
      for (int e = 0; e < m; ++e) {
        const double hm = 0.5 * h * s.M(c, e);
        const double id = c == e ? 1.0 : 0.0;
        if (hm != 0.0 || id != 0.0) {
          trip.emplace_back(row, j * m + e, -hm - id);
          trip.emplace_back(row, (j + 1) * m + e, -hm + id);
        }
      }
      rhs(row) = h * s.g(c);
      ++row;
    }
  }
  for (const auto& [i, v] : sys.right_conditions) {
    trip.emplace_back(row, (K - 1) * m + i, 1.0);
    rhs(row) = v;
    ++row;
  }

  Eigen::SparseMatrix<double> A(dim, dim);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) {
    fail(ErrorKind::Singular, "solve_linear_tpbvp: singular collocation matrix");
  }
  const Eigen::VectorXd y = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !y.allFinite()) {
    fail(ErrorKind::Singular, "solve_linear_tpbvp: collocation solve failed");
  }

  std::vector<double> y0(y.data(), y.data() + m);
  const auto f0 = sys.rhs(nodes.front(), y0);
  const double ext = nodes.front() - mesh.a();
  TpBvpSolution out{mesh, {}, K};
  for (int c = 0; c < m; ++c) {
    std::vector<double> v(static_cast<size_t>(mesh.n()) + 1);
    v[0] = y(c) - ext * f0[static_cast<size_t>(c)];
    for (int k = 1; k <= mesh.n(); ++k) {
      v[static_cast<size_t>(k)] = y(static_cast<Eigen::Index>(base[static_cast<size_t>(k)]) * m + c);
    }
    out.components.emplace_back(mesh, std::move(v));
  }
  return out;
}

double integer_coefficient(int n, double alpha) {
  require(n >= 0, "integer_coefficient: n >= 0");
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  const double sign = n % 2 == 1 ? 1.0 : -1.0;
  return sign * alpha / (fact * (n - alpha) * specfun::gamma(1.0 - alpha));
}

double analytic_solution_example2(double alpha, double t) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
  const double c = 1.0 / (2.0 * specfun::gamma(3.0 - alpha));
  return -std::pow(1.0 - t, 2.0 - alpha) * c + (1.0 - c) * t + c;
}

double exact_solution_example4(double alpha, double t) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
  return std::pow(t, alpha) / specfun::gamma(alpha + 1.0);
}

ClosedFormCoeffs example2_integer_coeffs(double alpha, int N) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
  require(N >= 0, "N >= 0");
  double s = 0.0;
  for (int n = 0; n <= N; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    s += sign * specfun::gamma(n + 1.0 - alpha) * integer_coefficient(n, alpha);
  }
  ClosedFormCoeffs c;
  c.alpha = alpha;
  c.N = N;
  c.M1 = -s / (2.0 * specfun::gamma(3.0 - alpha));
  c.M2 = 1.0 - c.M1;
  return c;
}

ClosedFormCoeffs example2_moment_coeffs(double alpha, int N) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
  require(N >= 2, "moment route needs N >= 2");
  const auto mc = expansions::moment_coeffs(alpha, N);
  ClosedFormCoeffs c;
  c.alpha = alpha;
  c.N = N;
  double s = 0.0;
  for (int p = 2; p <= N; ++p) {
    const double den = 2.0 - p - alpha;
    require(den != 0.0, "degenerate denominator 2-p-alpha");
    s += mc.c(p) * (1.0 - p) / ((1.0 - alpha) * den);
    c.Cp_terms.push_back(mc.c(p) / (2.0 * p * den));
  }
  c.M = (mc.B - mc.A / (1.0 - alpha) - s) / (2.0 * (2.0 - alpha));
  return c;
}

RealFn solve_example2_integer(double alpha, int N) {
  const auto c = example2_integer_coeffs(alpha, N);
  return [c](double t) { return c.M1 * std::pow(t, 2.0 - c.alpha) + c.M2 * t; };
}

expansions::DerivativeBundle example2_integer_bundle(double alpha, int N) {
  const auto c = example2_integer_coeffs(alpha, N);
  expansions::DerivativeBundle b;
  b.max_order = 64;
  b.eval = [c](int k, double t) {
    double coef = 1.0;
    for (int j = 0; j < k; ++j) coef *= (2.0 - c.alpha - j);
    double v = c.M1 * coef * std::pow(t, 2.0 - c.alpha - k);
    if (k == 0) v += c.M2 * t;
    if (k == 1) v += c.M2;
    return v;
  };
  return b;
}

RealFn solve_example2_moment_closed(double alpha, int N) {
  const auto c = example2_moment_coeffs(alpha, N);
  return [c](double t) {
    double v = c.M * std::pow(t, 2.0 - c.alpha);
    double lin = 1.0 - c.M;
    for (size_t q = 0; q < c.Cp_terms.size(); ++q) {
      v -= c.Cp_terms[q] * std::pow(t, static_cast<double>(q + 2));
      lin += c.Cp_terms[q];
    }
    return v + lin * t;
  };
}

RealFn solve_example2_moment_closed_derivative(double alpha, int N) {
  const auto c = example2_moment_coeffs(alpha, N);
  return [c](double t) {
    double v = c.M * (2.0 - c.alpha) * std::pow(t, 1.0 - c.alpha);
    double lin = 1.0 - c.M;
    for (size_t q = 0; q < c.Cp_terms.size(); ++q) {
      const double p = static_cast<double>(q + 2);
      v -= c.Cp_terms[q] * p * std::pow(t, p - 1.0);
      lin += c.Cp_terms[q];
    }
    return v + lin;
  };
}

TpBvpSystem assemble_tpbvp_example2(double alpha, int N) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
  require(N >= 2, "assemble_tpbvp_example2: N >= 2");
  const auto mc = expansions::moment_coeffs(alpha, N);
  TpBvpSystem s;
  s.m = 2 * N;
  s.rhs = [mc, N, alpha](double t, std::span<const double> y) {
    std::vector<double> f(static_cast<size_t>(2 * N));
    const double x = y[static_cast<size_t>(state_x())];
    const double l1 = y[static_cast<size_t>(state_lambda(N, 1))];
    f[static_cast<size_t>(state_x())] = 0.5 * mc.B * std::pow(t, 1.0 - alpha) - 0.5 * l1;
    double dl1 = mc.A * std::pow(t, -alpha);
    for (int p = 2; p <= N; ++p) {
      const double tp = std::pow(t, p - 2.0);
      f[static_cast<size_t>(state_v(p))] = (1.0 - p) * tp * x;
      dl1 -= (1.0 - p) * tp * y[static_cast<size_t>(state_lambda(N, p))];
      f[static_cast<size_t>(state_lambda(N, p))] = -mc.c(p) * std::pow(t, 1.0 - p - alpha);
    }
    f[static_cast<size_t>(state_lambda(N, 1))] = dl1;
    return f;
  };
  s.left_conditions.emplace_back(state_x(), 0.0);
  for (int p = 2; p <= N; ++p) s.left_conditions.emplace_back(state_v(p), 0.0);
  s.right_conditions.emplace_back(state_x(), 1.0);
  for (int p = 2; p <= N; ++p) s.right_conditions.emplace_back(state_lambda(N, p), 0.0);
  return s;
}

TpBvpSystem assemble_tpbvp_example4(double alpha, int N) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
  require(N >= 2, "assemble_tpbvp_example4: N >= 2");
  const auto mc = expansions::moment_coeffs(alpha, N);
  TpBvpSystem s;
  s.m = 2 * N;
  s.rhs = [mc, N, alpha](double t, std::span<const double> y) {
    std::vector<double> f(static_cast<size_t>(2 * N));
    const double x = y[static_cast<size_t>(state_x())];
    const double l1 = y[static_cast<size_t>(state_lambda(N, 1))];
    const double binv = 1.0 / mc.B;
    double dx = -mc.A * binv / t * x + 0.5 * binv * binv * std::pow(t, 2.0 * alpha - 2.0) * l1 +
                binv * std::pow(t, alpha - 1.0);
    double dl1 = mc.A * binv / t * l1;
    for (int p = 2; p <= N; ++p) {
      const double tp = std::pow(t, p - 2.0);
      const double tmp = std::pow(t, -static_cast<double>(p));
      dx += binv * mc.c(p) * tmp * y[static_cast<size_t>(state_v(p))];
      f[static_cast<size_t>(state_v(p))] = (1.0 - p) * tp * x;
      dl1 -= (1.0 - p) * tp * y[static_cast<size_t>(state_lambda(N, p))];
      f[static_cast<size_t>(state_lambda(N, p))] = -binv * mc.c(p) * tmp * l1;
    }
    f[static_cast<size_t>(state_x())] = dx;
    f[static_cast<size_t>(state_lambda(N, 1))] = dl1;
    return f;
  };
  s.left_conditions.emplace_back(state_x(), 0.0);
  for (int p = 2; p <= N; ++p) s.left_conditions.emplace_back(state_v(p), 0.0);
  s.right_conditions.emplace_back(state_x(), 1.0 / specfun::gamma(alpha + 1.0));
  for (int p = 2; p <= N; ++p) s.right_conditions.emplace_back(state_lambda(N, p), 0.0);
  return s;
}

RealFn higher_order_el_residual(const expansions::DerivativeBundle& curve,
                                const HigherOrderLagrangian& lag, double h) {
  require(lag.order >= 0 && static_cast<bool>(lag.partial),
          "higher_order_el_residual: incomplete Lagrangian");
  require(curve.max_order >= lag.order, "higher_order_el_residual: bundle order too low");
  require(h > 0.0, "higher_order_el_residual: step must be positive");
  return [curve, lag, h](double t) {
    std::vector<double> d(static_cast<size_t>(lag.order) + 1);
    auto inner = [&](int k, double s) {
      for (int j = 0; j <= lag.order; ++j) d[static_cast<size_t>(j)] = curve(j, s);
      return lag.partial(k, s, d);
    };
    double r = 0.0;
    for (int k = 0; k <= lag.order; ++k) {
      // k-th central difference on the points t + (k/2 - j) h.
      double acc = 0.0;
      double binom = 1.0;
      for (int j = 0; j <= k; ++j) {
        const double sign = j % 2 == 0 ? 1.0 : -1.0;
        acc += sign * binom * inner(k, t + (0.5 * k - j) * h);
        binom = binom * (k - j) / (j + 1);
      }
      const double term = acc / std::pow(h, k);
      r += (k % 2 == 0 ? 1.0 : -1.0) * term;
    }
    return r;
  };
}

HigherOrderLagrangian example2_integer_lagrangian(double alpha, int N) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
  require(N >= 1, "example2_integer_lagrangian: N >= 1");
  std::vector<double> c(static_cast<size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) c[static_cast<size_t>(n)] = integer_coefficient(n, alpha);
  HigherOrderLagrangian L;
  L.order = N;
  L.partial = [c, alpha](int k, double t, std::span<const double> d) {
    double v = c[static_cast<size_t>(k)] * std::pow(t, k - alpha);
    if (k == 1) v -= 2.0 * d[1];
    return v;
  };
  return L;
}

}  // namespace fracvar::indirect

#include "fracvar/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracvar/error.hpp"
#include "fracvar/specfun.hpp"

namespace fracvar {

Mesh::Mesh(double a, double b, int n) : a_(a), b_(b), n_(n), h_(0.0) {
  require(std::isfinite(a) && std::isfinite(b) && a < b,
          "Mesh: need finite a < b");
  require(n >= 1, "Mesh: need at least one subinterval");
  h_ = (b - a) / n;
}

SampledCurve::SampledCurve(Mesh mesh, std::vector<double> values)
    : mesh_(mesh), values_(std::move(values)) {
  require(static_cast<int>(values_.size()) == mesh_.n() + 1,
          "SampledCurve: expected n+1 values");
  for (double v : values_) {
    require(std::isfinite(v), "SampledCurve: values must be finite");
  }
}

SampledCurve SampledCurve::sample(const Mesh& mesh, const RealFn& f) {
  std::vector<double> v(static_cast<size_t>(mesh.n()) + 1);
  for (int i = 0; i <= mesh.n(); ++i) v[static_cast<size_t>(i)] = f(mesh.node(i));
  return {mesh, std::move(v)};
}

namespace ops {

namespace {

void check_index(const SampledCurve& c, int i) {
  if (i < 0 || i > c.mesh().n()) {
    fail(ErrorKind::Index, "node index " + std::to_string(i) + " outside [0, " +
                               std::to_string(c.mesh().n()) + "]");
  }
}

void check_same_mesh(const SampledCurve& x, const SampledCurve& y) {
  if (!(x.mesh() == y.mesh())) {
    fail(ErrorKind::MeshMismatch, "curves live on different meshes");
  }
}

}  // namespace

GlWeights gl_weights(double alpha, int K) {
  require(alpha > 0.0 && alpha < 1.0, "gl_weights: alpha must lie in (0,1)");
  require(K >= 0, "gl_weights: K must be nonnegative");
  GlWeights g{alpha, std::vector<double>(static_cast<size_t>(K) + 1)};
  g.w[0] = 1.0;
  for (int k = 1; k <= K; ++k) {
    g.w[static_cast<size_t>(k)] = g.w[static_cast<size_t>(k - 1)] * (k - 1 - alpha) / k;
  }
  return g;
}

double gl_left(const SampledCurve& curve, double alpha, int i) {
  check_index(curve, i);
  const auto w = gl_weights(alpha, i).w;
  double s = 0.0;
  for (int k = 0; k <= i; ++k) s += w[static_cast<size_t>(k)] * curve[i - k];
  return s * std::pow(curve.mesh().h(), -alpha);
}

double gl_right(const SampledCurve& curve, double alpha, int i) {
  check_index(curve, i);
  const int n = curve.mesh().n();
  const auto w = gl_weights(alpha, n - i).w;
  double s = 0.0;
  for (int k = 0; k <= n - i; ++k) s += w[static_cast<size_t>(k)] * curve[i + k];
  return s * std::pow(curve.mesh().h(), -alpha);
}

double gl_shifted_left(const SampledCurve& curve, double alpha, int i) {
  check_index(curve, i);
  if (i + 1 > curve.mesh().n()) {
    fail(ErrorKind::Index, "gl_shifted_left: stencil needs node i+1 <= n");
  }
  const auto w = gl_weights(alpha, i).w;
  double s = 0.0;
  for (int k = 0; k <= i; ++k) s += w[static_cast<size_t>(k)] * curve[i + 1 - k];
  return s * std::pow(curve.mesh().h(), -alpha);
}

std::vector<double> gl_left_all(const SampledCurve& curve, double alpha) {
  const int n = curve.mesh().n();
  const auto w = gl_weights(alpha, n).w;
  const double scale = std::pow(curve.mesh().h(), -alpha);
  std::vector<double> out(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    double s = 0.0;
    for (int k = 0; k <= i; ++k) s += w[static_cast<size_t>(k)] * curve[i - k];
    out[static_cast<size_t>(i)] = s * scale;
  }
  return out;
}

std::vector<double> gl_right_all(const SampledCurve& curve, double alpha) {
  const int n = curve.mesh().n();
  const auto w = gl_weights(alpha, n).w;
  const double scale = std::pow(curve.mesh().h(), -alpha);
  std::vector<double> out(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    double s = 0.0;
    for (int k = 0; k <= n - i; ++k) s += w[static_cast<size_t>(k)] * curve[i + k];
    out[static_cast<size_t>(i)] = s * scale;
  }
  return out;
}

double diethelm_weight(double alpha, int i, int j) {
  require(i >= 0 && j >= 0 && j <= i, "diethelm_weight: need 0 <= j <= i");
  const double e = 1.0 - alpha;
  // 0^e is taken as 0 also for e < 0 (finite-part value when alpha > 1).
  auto p = [e](double v) { return v == 0.0 ? 0.0 : std::pow(v, e); };
  // j == 0 carries weight 1 (this covers the i == 0 row).
  if (j == 0) return 1.0;
  if (j < i) return p(j + 1.0) - 2.0 * p(j) + p(j - 1.0);
  return e * std::pow(static_cast<double>(i), -alpha) - p(i) + p(i - 1.0);
}

double diethelm_caputo(const SampledCurve& curve, double alpha,
                       std::span<const double> boundary_derivs, int i) {
  require(alpha > 0.0 && alpha < 2.0 && alpha != 1.0,
          "diethelm_caputo: alpha must lie in (0,2) and differ from 1");
  check_index(curve, i);
  const int order = static_cast<int>(std::floor(alpha));
  require(static_cast<int>(boundary_derivs.size()) >= order + 1,
          "diethelm_caputo: need x^(k)(a) for k = 0..floor(alpha)");
  const double h = curve.mesh().h();
  double s = 0.0;
  for (int j = 0; j <= i; ++j) {
    double taylor = 0.0;
    double factor = 1.0;  // ((i-j) h)^k / k!
    for (int k = 0; k <= order; ++k) {
      if (k > 0) factor *= (i - j) * h / k;
      taylor += factor * boundary_derivs[static_cast<size_t>(k)];
    }
    s += diethelm_weight(alpha, i, j) * (curve[i - j] - taylor);
  }
  return std::pow(h, -alpha) / specfun::gamma(2.0 - alpha) * s;
}

double rl_power_exact(double nu, double alpha, double t, double a) {
  require(nu > -1.0, "rl_power_exact: need nu > -1");
  if (!(t > a)) fail(ErrorKind::Domain, "rl_power_exact: need t > a");
  return specfun::gamma(nu + 1.0) / specfun::gamma(nu + 1.0 - alpha) *
         std::pow(t - a, nu - alpha);
}

double rl_exp_exact(double lambda, double alpha, double t) {
  if (!(t > 0.0)) fail(ErrorKind::Domain, "rl_exp_exact: need t > 0");
  return std::pow(t, -alpha) *
         specfun::mittag_leffler(1.0, 1.0 - alpha, lambda * t);
}

double hadamard_logpow_exact(double beta, double alpha, double t) {
  require(beta > 0.0, "hadamard_logpow_exact: need beta > 0");
  if (!(t > 1.0)) fail(ErrorKind::Domain, "hadamard_logpow_exact: need t > 1");
  return specfun::gamma(beta + 1.0) / specfun::gamma(beta + 1.0 - alpha) *
         std::pow(std::log(t), beta - alpha);
}

double l2_error(const SampledCurve& x, const SampledCurve& y) {
  check_same_mesh(x, y);
  const int n = x.mesh().n();
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double d = x[i] - y[i];
    s += (i == 0 || i == n ? 0.5 : 1.0) * d * d;
  }
  return std::sqrt(s * x.mesh().h());
}

double max_error(const SampledCurve& x, const SampledCurve& y) {
  check_same_mesh(x, y);
  double m = 0.0;
  for (int i = 1; i < x.mesh().n(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace ops
}  // namespace fracvar

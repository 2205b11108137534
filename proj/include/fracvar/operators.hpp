#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fracvar {

using RealFn = std::function<double(double)>;

/// Uniform grid a = t_0 < t_1 < ... < t_n = b.
class Mesh {
 public:
  Mesh(double a, double b, int n);

  double a() const { return a_; }
  double b() const { return b_; }
  int n() const { return n_; }
  double h() const { return h_; }

  /// t_i = a + i h. Node n returns b exactly.
  double node(int i) const { return i == n_ ? b_ : a_ + i * h_; }

  bool operator==(const Mesh&) const = default;

 private:
  double a_;
  double b_;
  int n_;
  double h_;
};

/// Function values x_0..x_n on a mesh.
class SampledCurve {
 public:
  SampledCurve(Mesh mesh, std::vector<double> values);

  static SampledCurve sample(const Mesh& mesh, const RealFn& f);

  const Mesh& mesh() const { return mesh_; }
  std::span<const double> values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  Mesh mesh_;
  std::vector<double> values_;
};

/// Grunwald-Letnikov weights w_k = (-1)^k binom(alpha, k), k = 0..K.
struct GlWeights {
  double alpha;
  std::vector<double> w;
};

namespace ops {

GlWeights gl_weights(double alpha, int K);

/// h^-alpha sum_{k=0..i} w_k x_{i-k}
double gl_left(const SampledCurve& curve, double alpha, int i);
/// h^-alpha sum_{k=0..n-i} w_k x_{i+k}
double gl_right(const SampledCurve& curve, double alpha, int i);
/// h^-alpha sum_{k=0..i} w_k x(t_i - (k-1) h); needs i <= n-1.
double gl_shifted_left(const SampledCurve& curve, double alpha, int i);

/// Whole-curve variants reusing one weight table. Entry i holds the value at
/// node i (node 0 uses the single-term sum).
std::vector<double> gl_left_all(const SampledCurve& curve, double alpha);
std::vector<double> gl_right_all(const SampledCurve& curve, double alpha);

/// Diethelm weight a_{i,j} of the backward-difference Caputo formula.
double diethelm_weight(double alpha, int i, int j);

/// Caputo derivative at node i by the Diethelm backward-difference formula,
/// order O(h^{2-alpha}). boundary_derivs holds x^{(k)}(a), k = 0..floor(alpha).
double diethelm_caputo(const SampledCurve& curve, double alpha,
                       std::span<const double> boundary_derivs, int i);

/// Left Riemann-Liouville derivative of (t-a)^nu:
/// Gamma(nu+1)/Gamma(nu+1-alpha) (t-a)^{nu-alpha}.
double rl_power_exact(double nu, double alpha, double t, double a);

/// Left Riemann-Liouville derivative of e^{lambda t} with terminal 0:
/// t^-alpha E_{1,1-alpha}(lambda t).
double rl_exp_exact(double lambda, double alpha, double t);

/// Left Hadamard derivative (terminal 1) of (ln t)^beta:
/// Gamma(beta+1)/Gamma(beta+1-alpha) (ln t)^{beta-alpha}.
double hadamard_logpow_exact(double beta, double alpha, double t);

/// Trapezoid approximation of the L2 distance on the common mesh.
double l2_error(const SampledCurve& x, const SampledCurve& y);

/// max |x_i - y_i| over interior nodes i = 1..n-1.
double max_error(const SampledCurve& x, const SampledCurve& y);

}  // namespace ops
}  // namespace fracvar

#pragma once

#include <string>
#include <vector>

#include "fracvar/expansions.hpp"

namespace fracvar::catalog {

/// Test function with analytic derivatives of every order and, where known,
/// exact fractional derivatives.
struct TestFunction {
  std::string id;
  expansions::DerivativeBundle derivs;
  /// Left RL derivative with terminal 0; empty when unknown.
  std::function<double(double alpha, double t)> rl_exact;
  /// Left Hadamard derivative with terminal 1; empty when unknown.
  std::function<double(double alpha, double t)> hadamard_exact;
  /// Left Hadamard derivative with terminal 0; empty when unknown.
  std::function<double(double alpha, double t)> hadamard0_exact;

  double operator()(double t) const { return derivs(0, t); }
};

/// Ids: t2, t4, exp2t, lnt. Throws InvalidArgument for anything else.
TestFunction get(const std::string& id);
std::vector<std::string> ids();

enum class BoundMethod { Integer, Moment, Hadamard };

struct BoundRow {
  double t = 0.0;
  double error = 0.0;
  double bound = 0.0;
  bool dominated = false;
};

struct BoundSweepOptions {
  /// Evaluation nodes a + i (b-a)/grid, i = 1..grid.
  int grid = 100;
  /// Gauss-Legendre panels for the moments.
  int quad_n = 64;
  /// Samples of [a, t] used for the derivative maxima M, L2, Lmax.
  int samples = 400;
};

/// Observed truncation error against the truncation bound on (0,1] for the
/// RL methods and (1,2] for the Hadamard one. An error counts as dominated
/// when error <= bound + 1e-12 (1 + |exact|); the slack absorbs roundoff
/// where the bound is exactly zero.
std::vector<BoundRow> bound_sweep(const TestFunction& f, BoundMethod method,
                                  double alpha, int N,
                                  const BoundSweepOptions& opts = {});

constexpr double kBoundSlack = 1e-12;

}  // namespace fracvar::catalog

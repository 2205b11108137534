#include "fracvar/specfun.hpp"

#include <cmath>
#include <string>

#include "fracvar/error.hpp"

namespace fracvar::specfun {

namespace {

constexpr double kPoleTolerance = 1e-14;
constexpr int kMaxSeriesTerms = 1'000'000;

// 1 / Gamma(x) for x > 0, finite (and zero) past the overflow point of tgamma.
double reciprocal_gamma_positive(double x) {
  if (x < 170.0) return 1.0 / std::tgamma(x);
  return std::exp(-std::lgamma(x));
}

}  // namespace

double gamma(double z) {
  if (z <= 0.0) {
    const double nearest = std::round(z);
    if (std::abs(z - nearest) < kPoleTolerance) {
      fail(ErrorKind::Pole,
           "gamma: pole at nonpositive integer " + std::to_string(nearest));
    }
  }
  return std::tgamma(z);
}

double gen_binomial(double alpha, int k) {
  require(k >= 0, "gen_binomial: k must be nonnegative");
  double value = 1.0;
  for (int j = 0; j < k; ++j) value *= (alpha - j) / (j + 1);
  return value;
}

double mittag_leffler(double alpha, double beta, double z) {
  require(alpha > 0.0 && beta > 0.0,
          "mittag_leffler: alpha and beta must be positive");
  // Neumaier-compensated sum; stop after two consecutive negligible terms.
  double sum = 0.0;
  double compensation = 0.0;
  int quiet = 0;
  for (int j = 0; j < kMaxSeriesTerms; ++j) {
    const double arg = alpha * j + beta;
    double term;
    if (z == 0.0) {
      term = j == 0 ? reciprocal_gamma_positive(arg) : 0.0;
    } else if (arg < 170.0 && j < 300) {
      term = std::pow(z, j) / std::tgamma(arg);
    } else {
      const double log_mag = j * std::log(std::abs(z)) - std::lgamma(arg);
      term = std::exp(log_mag);
      if (z < 0.0 && (j % 2 == 1)) term = -term;
    }
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
    if (!std::isfinite(sum)) {
      fail(ErrorKind::NoConvergence, "mittag_leffler: series overflow");
    }
    if (std::abs(term) < 1e-16 * (1.0 + std::abs(sum + compensation))) {
      if (++quiet == 2) return sum + compensation;
    } else {
      quiet = 0;
    }
  }
  fail(ErrorKind::NoConvergence,
       "mittag_leffler: no convergence within 10^6 terms (|z| too large)");
}

double stirling_function(double alpha, int k) {
  require(k >= 0, "stirling_function: k must be nonnegative");
  double sum = 0.0;
  double binom = 1.0;  // binom(k, j), updated incrementally
  for (int j = 1; j <= k; ++j) {
    binom = binom * (k - j + 1) / j;
    const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * std::pow(static_cast<double>(j), alpha);
  }
  double factorial = 1.0;
  for (int j = 2; j <= k; ++j) factorial *= j;
  return sum / factorial;
}

}  // namespace fracvar::specfun

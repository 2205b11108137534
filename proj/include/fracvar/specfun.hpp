#pragma once

namespace fracvar::specfun {

/// Gamma function. Throws ErrorKind::Pole within 1e-14 of 0, -1, -2, ...
double gamma(double z);

/// Generalized binomial coefficient binom(alpha, k), product form
/// alpha (alpha-1) ... (alpha-k+1) / k!.
double gen_binomial(double alpha, int k);

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) by plain series
/// summation. There is no asymptotic branch: large |z| either loses accuracy
/// to cancellation or throws ErrorKind::NoConvergence after 10^6 terms.
double mittag_leffler(double alpha, double beta, double z);

/// Stirling function S(alpha, k) = (1/k!) sum_{j=1..k} (-1)^{k-j} binom(k,j) j^alpha.
/// S(alpha, 0) is the empty sum, 0.
double stirling_function(double alpha, int k);

}  // namespace fracvar::specfun

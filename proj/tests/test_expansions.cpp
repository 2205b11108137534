#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fracvar/catalog.hpp"
#include "fracvar/error.hpp"
#include "fracvar/expansions.hpp"
#include "fracvar/specfun.hpp"

using namespace fracvar;
using namespace fracvar::expansions;

namespace {

const double kAlphas[] = {0.1, 0.3, 0.5, 0.7, 0.9, 0.99};
const int kNs[] = {4, 7, 15, 30, 70, 120, 170};
// Reference B(alpha, N) to four decimals, rows follow kAlphas.
const double kReferenceB[6][7] = {
    {0.0310, 0.0188, 0.0095, 0.0051, 0.0024, 0.0015, 0.0011},
    {0.1357, 0.0928, 0.0549, 0.0339, 0.0188, 0.0129, 0.0101},
    {0.3085, 0.2364, 0.1630, 0.1157, 0.0760, 0.0581, 0.0488},
    {0.5519, 0.4717, 0.3783, 0.3083, 0.2396, 0.2040, 0.1838},
    {0.8470, 0.8046, 0.7481, 0.6990, 0.6428, 0.6092, 0.5884},
    {0.9849, 0.9799, 0.9728, 0.9662, 0.9582, 0.9531, 0.9498}};

DerivativeBundle poly_bundle(std::vector<double> c) {
  DerivativeBundle b;
  b.max_order = 32;
  b.eval = [c](int k, double t) {
    double s = 0.0;
    for (size_t m = static_cast<size_t>(k); m < c.size(); ++m) {
      double f = 1.0;
      for (int j = 0; j < k; ++j) f *= static_cast<double>(m) - j;
      s += c[m] * f * std::pow(t, static_cast<double>(m) - k);
    }
    return s;
  };
  return b;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("B coefficient table") {
  const auto tab = b_table(kAlphas, kNs);
  REQUIRE(tab.size() == 6);
  for (size_t i = 0; i < 6; ++i) {
    REQUIRE(tab[i].size() == 7);
    for (size_t j = 0; j < 7; ++j) CHECK(std::abs(tab[i][j] - kReferenceB[i][j]) <= 5e-5);
  }
  CHECK(std::abs(moment_coeffs(0.5, 4).B - 0.3085) <= 5e-5);
  CHECK(std::abs(moment_coeffs(0.9, 30).B - 0.6990) <= 5e-5);
}

TEST_CASE("coefficient formulas against direct gamma evaluation") {
  for (double a : {0.2, 0.5, 0.8}) {
    const int N = 9;
    const auto m = moment_coeffs(a, N);
    double as = 1.0, bs = 1.0;
    for (int p = 2; p <= N; ++p) as += std::tgamma(p - 1 + a) / (std::tgamma(a) * std::tgamma(p));
    for (int p = 1; p <= N; ++p) bs += std::tgamma(p - 1 + a) / (std::tgamma(a - 1) * std::tgamma(p + 1));
    CHECK(m.A == doctest::Approx(as / std::tgamma(1 - a)).epsilon(1e-13));
    CHECK(m.B == doctest::Approx(bs / std::tgamma(2 - a)).epsilon(1e-12));
    for (int p = 2; p <= N; ++p) {
      const double c = std::tgamma(p - 1 + a) / (std::tgamma(2 - a) * std::tgamma(a - 1) * std::tgamma(p));
      CHECK(m.c(p) == doctest::Approx(c).epsilon(1e-13));
    }
    const auto h = hadamard_moment_coeffs(a, N);
    CHECK(h.A == m.A);
    CHECK(h.B == m.B);
    for (int p = 2; p <= N; ++p) {
      const double c = std::tgamma(p + a - 1) / (std::tgamma(-a) * std::tgamma(1 + a) * std::tgamma(p));
      CHECK(h.c(p) == doctest::Approx(c).epsilon(1e-13));
      CHECK(h.c(p) == doctest::Approx(m.c(p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("A at N = 1 is 1/Gamma(1-alpha)") {
  for (double a : {0.3, 0.6}) {
    const auto m = moment_coeffs(a, 1);
    CHECK(m.A == doctest::Approx(1.0 / specfun::gamma(1 - a)));
    CHECK(m.C.empty());
  }
  CHECK_THROWS_AS(moment_coeffs(0.5, 0), Error);
  CHECK_THROWS_AS(moment_coeffs(1.0, 3), Error);
}

TEST_CASE("series bookkeeping") {
  for (double a : {0.3, 0.5, 0.9}) {
    for (int N : {2, 5, 30}) {
      const auto m = moment_coeffs(a, N);
      const auto m1 = moment_coeffs(a, N + 1);
      CHECK(std::abs(m1.A - a_series_term(a, N + 1) / specfun::gamma(1 - a) - m.A) <= 1e-13 * std::abs(m.A));
      CHECK(std::abs(m1.B - b_series_term(a, N + 1) / specfun::gamma(2 - a) - m.B) <= 1e-13 * (1 + std::abs(m.B)));
    }
  }
}

TEST_CASE("B stays nonzero") {
  for (double a : kAlphas)
    for (int N = 1; N <= 200; N += 7) CHECK(moment_coeffs(a, N).B != 0.0);
}

TEST_CASE("integer expansion, left") {
  const auto t4 = catalog::get("t4");
  for (int i = 0; i <= 90; ++i) {
    const double t = 0.1 + 0.01 * i;
    CHECK(std::abs(expand_integer_left(t4.derivs, 0.5, 4, t, 0.0) - specfun::gamma(5) / specfun::gamma(4.5) * std::pow(t, 3.5)) <= 1e-9);
  }
  const auto e = catalog::get("exp2t");
  for (double t : {0.3, 0.8}) {
    CHECK(expand_integer_left(e.derivs, 0.4, 0, t, 0.0) ==
          doctest::Approx(e(t) * std::pow(t, -0.4) / specfun::gamma(0.6)));
    double prev = 1e300;
    for (int N = 1; N <= 3; ++N) {
      const double err = std::abs(expand_integer_left(e.derivs, 0.5, N, t, 0.0) - e.rl_exact(0.5, t));
      CHECK(err < prev);
      prev = err;
    }
  }
  CHECK(kind_of([&] { expand_integer_left(t4.derivs, 0.5, 4, 0.0, 0.0); }) == ErrorKind::Domain);
  DerivativeBundle low = t4.derivs;
  low.max_order = 2;
  CHECK_THROWS_AS(expand_integer_left(low, 0.5, 4, 0.5, 0.0), Error);
}

TEST_CASE("integer expansion, right") {
  const auto one = poly_bundle({1.0});
  for (int N : {0, 3, 7})
    CHECK(expand_integer_right(one, 0.3, N, 0.4, 1.0) ==
          doctest::Approx(std::pow(0.6, -0.3) / specfun::gamma(0.7)));
  const auto e = catalog::get("exp2t");
  CHECK(expand_integer_right(e.derivs, 0.5, 0, 0.2, 1.0) ==
        doctest::Approx(e(0.2) * std::pow(0.8, -0.5) / specfun::gamma(0.5)));
  // (1-t)^2 against the mirrored power rule
  const auto sq = poly_bundle({1.0, -2.0, 1.0});
  for (double t : {0.1, 0.5, 0.9})
    CHECK(expand_integer_right(sq, 0.5, 2, t, 1.0) ==
          doctest::Approx(ops::rl_power_exact(2, 0.5, 1.0 - t, 0.0)).epsilon(1e-12));
  CHECK(kind_of([&] { expand_integer_right(sq, 0.5, 2, 1.0, 1.0); }) == ErrorKind::Domain);
}

TEST_CASE("moments") {
  const RealFn one = [](double) { return 1.0; };
  const RealFn id = [](double t) { return t; };
  CHECK(moments_vp(one, 2, 0.7, 0.2, 10) == doctest::Approx(-0.5));
  CHECK(moments_vp(id, 2, 0.8, 0.0, 10) == doctest::Approx(-0.32));
  for (int p = 2; p <= 6; ++p) {
    CHECK(moments_vp(id, p, 0.3, 0.3, 10) == 0.0);
    CHECK(moments_wp(id, p, 1.0, 1.0, 10) == 0.0);
    CHECK(hadamard_moments_vp(id, p, 1.0, 1.0, 10) == 0.0);
    CHECK(hadamard_moments_wp(id, p, 2.0, 2.0, 10) == 0.0);
  }
  CHECK(moments_wp(one, 2, 0.25, 1.0, 10) == doctest::Approx(-0.75));
  // (1-p) t^{p-1}/(p-1) for x = 1: Gauss-Legendre is exact here
  CHECK(moments_vp(one, 5, 0.9, 0.0, 3, Quadrature::GaussLegendre) == doctest::Approx(-std::pow(0.9, 4)).epsilon(1e-14));
}

TEST_CASE("moment expansion, left") {
  const auto t4 = catalog::get("t4");
  const auto x = t4.derivs.function(0);
  const auto xd = t4.derivs.function(1);
  const RealFn zero = [](double) { return 0.0; };
  CHECK(expand_moment_left(zero, zero, moment_coeffs(0.5, 5), 0.6, 0.0, 50) == 0.0);
  const double exact = 24.0 / specfun::gamma(4.5);
  CHECK(exact == doctest::Approx(2.0635).epsilon(1e-4));
  double prev = 1e300;
  for (int N : {1, 2, 3, 6, 10, 30}) {
    const double err = std::abs(expand_moment_left(x, xd, moment_coeffs(0.5, N), 1.0, 0.0, 64, Quadrature::GaussLegendre) - exact);
    CHECK(err < prev);
    prev = err;
  }
  const auto e = catalog::get("exp2t");
  const auto ex = e.derivs.function(0);
  const auto exd = e.derivs.function(1);
  for (double t : {0.5, 1.0}) {
    const double e3 = std::abs(expand_moment_left(ex, exd, moment_coeffs(0.5, 3), t, 0.0, 64, Quadrature::GaussLegendre) - e.rl_exact(0.5, t));
    const double e6 = std::abs(expand_moment_left(ex, exd, moment_coeffs(0.5, 6), t, 0.0, 64, Quadrature::GaussLegendre) - e.rl_exact(0.5, t));
    CHECK(e6 < e3);
  }
  CHECK(kind_of([&] { expand_moment_left(x, xd, moment_coeffs(0.5, 3), 0.0, 0.0, 10); }) == ErrorKind::Domain);
}

TEST_CASE("moment expansion, right") {
  const RealFn zero = [](double) { return 0.0; };
  const RealFn one = [](double) { return 1.0; };
  const auto c = moment_coeffs(0.5, 2);
  CHECK(expand_moment_right(zero, zero, c, 0.3, 1.0, 20) == 0.0);
  const double t = 0.3;
  const double w2 = -(1.0 - t);
  CHECK(expand_moment_right(one, zero, c, t, 1.0, 20) ==
        doctest::Approx(c.A * std::pow(1 - t, -0.5) - c.c(2) * std::pow(1 - t, -1.5) * w2));
  // mirror of the left expansion of t^2
  const RealFn sq = [](double s) { return (1 - s) * (1 - s); };
  const RealFn sqd = [](double s) { return -2 * (1 - s); };
  const RealFn p2 = [](double s) { return s * s; };
  const RealFn p2d = [](double s) { return 2 * s; };
  for (int N : {2, 5}) {
    const auto k = moment_coeffs(0.5, N);
    for (double s : {0.1, 0.6}) {
      CHECK(expand_moment_right(sq, sqd, k, s, 1.0, 64, Quadrature::GaussLegendre) ==
            doctest::Approx(expand_moment_left(p2, p2d, k, 1.0 - s, 0.0, 64, Quadrature::GaussLegendre)).epsilon(1e-12));
    }
  }
  CHECK(kind_of([&] { expand_moment_right(one, zero, c, 1.0, 1.0, 10); }) == ErrorKind::Domain);
}

TEST_CASE("Caputo moment expansion") {
  const auto t2 = catalog::get("t2");
  const auto c = moment_coeffs(0.5, 4);
  const auto x = t2.derivs.function(0);
  const auto xd = t2.derivs.function(1);
  CHECK(expand_caputo_left(x, xd, c, 0.7, 0.0, 40) == expand_moment_left(x, xd, c, 0.7, 0.0, 40));
  const RealFn three = [](double) { return 3.0; };
  const RealFn zero = [](double) { return 0.0; };
  // A + sum C telescopes to 1/Gamma(1-alpha), so constants are reproduced at every N
  for (int N : {1, 2, 8, 32, 128})
    CHECK(std::abs(expand_caputo_left(three, zero, moment_coeffs(0.5, N), 0.5, 0.0, 64, Quadrature::GaussLegendre)) <= 1e-12);
  const auto e = catalog::get("exp2t");
  const double t = 0.6;
  const double exact = e.rl_exact(0.5, t) - 1.0 / (std::sqrt(t) * specfun::gamma(0.5));
  const double e3 = std::abs(expand_caputo_left(e.derivs.function(0), e.derivs.function(1), moment_coeffs(0.5, 3), t, 0.0, 64, Quadrature::GaussLegendre) - exact);
  const double e9 = std::abs(expand_caputo_left(e.derivs.function(0), e.derivs.function(1), moment_coeffs(0.5, 9), t, 0.0, 64, Quadrature::GaussLegendre) - exact);
  CHECK(e9 < e3);
}

TEST_CASE("B-omitted variant is worse") {
  for (const char* id : {"t4", "exp2t"}) {
    const auto f = catalog::get(id);
    const auto x = f.derivs.function(0);
    const auto xd = f.derivs.function(1);
    const auto c = moment_coeffs(0.5, 3);
    double em = 0.0, ea = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double t = 0.01 * i;
      const double ex = f.rl_exact(0.5, t);
      em = std::max(em, std::abs(expand_moment_left(x, xd, c, t, 0.0, 64, Quadrature::GaussLegendre) - ex));
      ea = std::max(ea, std::abs(expand_atanackovic(x, c, t, 0.0, 64, Quadrature::GaussLegendre) - ex));
    }
    CHECK(em < ea);
  }
  const RealFn zero = [](double) { return 0.0; };
  CHECK(expand_atanackovic(zero, moment_coeffs(0.5, 3), 0.4, 0.0, 10) == 0.0);
}

TEST_CASE("Hadamard integer expansion") {
  const auto c = poly_bundle({2.5});
  CHECK(hadamard_expand_integer(c, 0.5, 6, 1.3, HadamardDirection::Derivative) == 0.0);
  const auto ln = catalog::get("lnt");
  CHECK(hadamard_expand_integer(ln.derivs, 0.5, 1, 1.7, HadamardDirection::Derivative) == doctest::Approx(1.0));
  const auto t4 = catalog::get("t4");
  for (double t : {0.5, 1.5})
    CHECK(hadamard_expand_integer(t4.derivs, 0.3, 4, t, HadamardDirection::Derivative) ==
          doctest::Approx(t4.hadamard0_exact(0.3, t)).epsilon(1e-12));

  // integral then derivative recovers a polynomial without constant term
  const std::vector<double> p = {0.0, 1.0, 0.0, -2.0, 0.5};
  const double alpha = 0.4;
  std::vector<double> q(p.size(), 0.0);
  for (size_t m = 1; m < p.size(); ++m) {
    std::vector<double> mono(m + 1, 0.0);
    mono[m] = 1.0;
    q[m] = p[m] * hadamard_expand_integer(poly_bundle(mono), alpha, 8, 1.0, HadamardDirection::Integral);
  }
  const auto qb = poly_bundle(q);
  const auto pb = poly_bundle(p);
  for (double t : {0.3, 0.9, 1.4})
    CHECK(hadamard_expand_integer(qb, alpha, 8, t, HadamardDirection::Derivative) ==
          doctest::Approx(pb(0, t)).epsilon(1e-12));
  CHECK(kind_of([&] { hadamard_expand_integer(pb, 0.5, 2, 0.0, HadamardDirection::Derivative); }) == ErrorKind::Domain);
}

TEST_CASE("Hadamard moment expansion") {
  const RealFn zero = [](double) { return 0.0; };
  CHECK(hadamard_expand_moment(zero, zero, hadamard_moment_coeffs(0.5, 4), 1.5, 1.0, 20) == 0.0);
  const auto ln = catalog::get("lnt");
  const auto lx = ln.derivs.function(0);
  const auto lxd = ln.derivs.function(1);
  for (int N : {2, 4, 8})
    for (double t : {1.2, 2.0, 2.7})
      CHECK(hadamard_expand_moment(lx, lxd, hadamard_moment_coeffs(0.5, N), t, 1.0, 64, Quadrature::GaussLegendre) ==
            doctest::Approx(ops::hadamard_logpow_exact(1, 0.5, t)).epsilon(1e-10));

  const auto t4 = catalog::get("t4");
  const auto x = t4.derivs.function(0);
  const auto xd = t4.derivs.function(1);
  // 40-digit quadrature of the Hadamard integral of t^4 at t = 2
  CHECK(t4.hadamard_exact(0.5, 2.0) == doctest::Approx(32.0846470635647).epsilon(1e-12));
  double prev = 1e300;
  for (int N : {2, 4, 6}) {
    const double err = std::abs(hadamard_expand_moment(x, xd, hadamard_moment_coeffs(0.5, N), 2.0, 1.0, 64, Quadrature::GaussLegendre) - 32.0846470635647);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(kind_of([&] { hadamard_expand_moment(x, xd, hadamard_moment_coeffs(0.5, 2), 1.0, 1.0, 10); }) == ErrorKind::Domain);
}

TEST_CASE("Hadamard right expansion mirrors the left one") {
  const double a = 1.0, b = std::exp(1.0);
  const RealFn x = [](double t) { return t * t + std::sin(t); };
  const RealFn xd = [](double t) { return 2 * t + std::cos(t); };
  const RealFn y = [b](double u) { return (b / u) * (b / u) + std::sin(b / u); };
  const RealFn yd = [b, xd](double u) { return -xd(b / u) * b / (u * u); };
  for (int N : {2, 5}) {
    const auto c = hadamard_moment_coeffs(0.6, N);
    for (double t : {1.3, 2.1}) {
      CHECK(hadamard_expand_moment_right(x, xd, c, t, b, 64, Quadrature::GaussLegendre) ==
            doctest::Approx(hadamard_expand_moment(y, yd, c, a * b / t, a, 64, Quadrature::GaussLegendre)).epsilon(1e-10));
    }
  }
  CHECK(kind_of([&] { hadamard_expand_moment_right(x, xd, hadamard_moment_coeffs(0.5, 2), b, b, 10); }) == ErrorKind::Domain);
}

TEST_CASE("linearity of every expansion") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  const auto f = catalog::get("exp2t");
  const auto g = catalog::get("t4");
  for (int trial = 0; trial < 5; ++trial) {
    const double ca = U(rng), cb = U(rng);
    DerivativeBundle h;
    h.max_order = 32;
    h.eval = [&](int k, double t) { return ca * f.derivs(k, t) + cb * g.derivs(k, t); };
    auto lin = [&](auto&& op) {
      const double lhs = op(h);
      const double rhs = ca * op(f.derivs) + cb * op(g.derivs);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
    };
    const double t = 0.2 + 0.15 * trial;
    const auto mc = moment_coeffs(0.5, 5);
    const auto hc = hadamard_moment_coeffs(0.5, 5);
    lin([&](const DerivativeBundle& d) { return expand_integer_left(d, 0.5, 5, t, 0.0); });
    lin([&](const DerivativeBundle& d) { return expand_integer_right(d, 0.5, 5, t, 1.0); });
    lin([&](const DerivativeBundle& d) { return expand_moment_left(d.function(0), d.function(1), mc, t, 0.0, 32); });
    lin([&](const DerivativeBundle& d) { return expand_moment_right(d.function(0), d.function(1), mc, t, 1.0, 32); });
    lin([&](const DerivativeBundle& d) { return expand_caputo_left(d.function(0), d.function(1), mc, t, 0.0, 32); });
    lin([&](const DerivativeBundle& d) { return expand_atanackovic(d.function(0), mc, t, 0.0, 32); });
    lin([&](const DerivativeBundle& d) { return hadamard_expand_integer(d, 0.5, 5, t, HadamardDirection::Derivative); });
    lin([&](const DerivativeBundle& d) { return hadamard_expand_moment(d.function(0), d.function(1), hc, 1.0 + t, 1.0, 32); });
    lin([&](const DerivativeBundle& d) { return hadamard_expand_moment_right(d.function(0), d.function(1), hc, 1.0 + t, 2.0, 32); });
  }
}

TEST_CASE("bounds: closed-form behaviour") {
  CHECK(bound_integer(0.0, 0.5, 4, 0.7, 0.0) == 0.0);
  CHECK(bound_moment(0.0, 0.5, 10, 0.7, 0.0) == 0.0);
  CHECK(bound_hadamard(0.0, 0.5, 8, 1.7, 1.0) == 0.0);
  double prev = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double b = bound_integer(3.0, 0.5, 3, 0.1 * i, 0.0);
    CHECK(b > prev);
    prev = b;
  }
  CHECK(bound_moment(1.0, 0.5, 4, 0.8, 0.0) / bound_moment(1.0, 0.5, 16, 0.8, 0.0) == doctest::Approx(2.0));
  CHECK(bound_hadamard(1.0, 0.5, 4, 1.0 + 1e-9, 1.0) < 1e-12);
  CHECK(bound_integer(2.0, 0.5, 2, 0.5, 0.0) ==
        doctest::Approx(2.0 * std::pow(0.5, 2.5) / (specfun::gamma(0.5) * 6.0)));
}

TEST_CASE("bounds: exp2t integer route with M = 2^4 e^2") {
  const auto e = catalog::get("exp2t");
  const double M = 16.0 * std::exp(2.0);
  for (int i = 1; i <= 100; ++i) {
    const double t = 0.01 * i;
    const double err = std::abs(expand_integer_left(e.derivs, 0.5, 3, t, 0.0) - e.rl_exact(0.5, t));
    CHECK(err <= bound_integer(M, 0.5, 3, t, 0.0));
  }
}

TEST_CASE("bounds: oracle dominance over the test matrix") {
  int violations = 0;
  for (const char* id : {"t2", "t4", "exp2t"})
    for (double a : {0.3, 0.5, 0.7})
      for (int N = 2; N <= 10; ++N)
        for (auto m : {catalog::BoundMethod::Integer, catalog::BoundMethod::Moment})
          for (const auto& r : catalog::bound_sweep(catalog::get(id), m, a, N))
            if (!r.dominated) ++violations;
  for (double a : {0.3, 0.5, 0.7})
    for (int N = 2; N <= 10; ++N)
      for (const auto& r : catalog::bound_sweep(catalog::get("lnt"), catalog::BoundMethod::Hadamard, a, N))
        if (!r.dominated) ++violations;
  CHECK(violations == 0);
}

TEST_CASE("cross-family agreement") {
  const auto e = catalog::get("exp2t");
  const auto x = e.derivs.function(0);
  const auto xd = e.derivs.function(1);
  for (double t : {0.25, 0.5, 1.0}) {
    const int Ni = 8, Nm = 10;
    const double vi = expand_integer_left(e.derivs, 0.5, Ni, t, 0.0);
    const double vm = expand_moment_left(x, xd, moment_coeffs(0.5, Nm), t, 0.0, 64, Quadrature::GaussLegendre);
    const double bi = bound_integer(std::pow(2.0, Ni + 1) * std::exp(2 * t), 0.5, Ni, t, 0.0);
    const double bm = bound_moment(4.0 * std::exp(2 * t), 0.5, Nm, t, 0.0);
    CHECK(std::abs(vi - vm) <= bi + bm);
  }
}

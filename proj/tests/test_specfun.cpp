#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracvar/error.hpp"
#include "fracvar/specfun.hpp"

using namespace fracvar;
namespace sf = fracvar::specfun;
using sf::gen_binomial;
using sf::mittag_leffler;
using sf::stirling_function;

namespace {

// Stirling numbers of the second kind by S(n,k) = k S(n-1,k) + S(n-1,k-1).
double stirling2(int n, int k) {
  std::vector<std::vector<double>> s(static_cast<size_t>(n) + 1,
                                     std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
  s[0][0] = 1.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j)
      s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
  return s[n][k];
}

}  // namespace

TEST_CASE("gamma values") {
  CHECK(sf::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sf::gamma(0.5) == doctest::Approx(1.7724538509055160).epsilon(1e-14));
  CHECK(sf::gamma(2.5) == doctest::Approx(1.5 * 0.5 * std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(sf::gamma(-0.5) == doctest::Approx(-2.0 * std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("gamma poles") {
  for (double z : {0.0, -1.0, -2.0, -7.0, -3.0 + 1e-15}) {
    CHECK_THROWS_AS(sf::gamma(z), Error);
    try {
      sf::gamma(z);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Pole);
    }
  }
  CHECK_NOTHROW(sf::gamma(-3.0 + 1e-6));
}

TEST_CASE("gamma recurrence") {
  for (int i = 1; i <= 50; ++i) {
    const double z = 0.1 * i;
    const double lhs = sf::gamma(z + 1.0);
    CHECK(std::abs(lhs - z * sf::gamma(z)) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("generalized binomial") {
  CHECK(gen_binomial(0.5, 0) == 1.0);
  CHECK(gen_binomial(0.5, 1) == 0.5);
  CHECK(gen_binomial(0.5, 2) == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(gen_binomial(3.0, 5) == 0.0);
  CHECK(gen_binomial(5.0, 2) == doctest::Approx(10.0));
}

TEST_CASE("binomial Pascal identity") {
  for (double a : {0.3, 0.5, 0.9, 2.5}) {
    for (int k = 1; k <= 20; ++k) {
      const double lhs = gen_binomial(a, k);
      const double rhs = gen_binomial(a - 1.0, k) + gen_binomial(a - 1.0, k - 1);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST_CASE("binomial agrees with gamma form") {
  for (double a : {0.3, 0.7, 1.5}) {
    for (int k = 0; k <= 6; ++k) {
      const double g = sf::gamma(a + 1) / (sf::gamma(k + 1.0) * sf::gamma(a - k + 1));
      CHECK(gen_binomial(a, k) == doctest::Approx(g).epsilon(1e-12));
    }
  }
}

TEST_CASE("Mittag-Leffler") {
  CHECK(mittag_leffler(1, 1, 1) == doctest::Approx(2.718281828459045).epsilon(1e-15));
  CHECK(mittag_leffler(1, 2, 0) == 1.0);
  // 200-term partial sum in 40-digit arithmetic.
  CHECK(mittag_leffler(1, 0.5, 2) == doctest::Approx(10.538428671807382812).epsilon(1e-13));
  // E_{2,1}(-z^2) = cos z
  CHECK(mittag_leffler(2, 1, -1.0) == doctest::Approx(std::cos(1.0)).epsilon(1e-13));
}

TEST_CASE("Mittag-Leffler matches exp on [-5,5]") {
  for (int i = 0; i <= 100; ++i) {
    const double z = -5.0 + 0.1 * i;
    CHECK(std::abs(mittag_leffler(1, 1, z) - std::exp(z)) <= 1e-12 * std::exp(z));
  }
}

TEST_CASE("Mittag-Leffler argument checks") {
  CHECK_THROWS_AS(mittag_leffler(0.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(mittag_leffler(1.0, -1.0, 1.0), Error);
}

TEST_CASE("Stirling function") {
  CHECK(stirling_function(0.37, 1) == doctest::Approx(1.0));
  CHECK(stirling_function(2, 2) == doctest::Approx(1.0));
  CHECK(stirling_function(3, 2) == doctest::Approx(3.0));
  CHECK(stirling_function(0.5, 0) == 0.0);
  for (int m = 1; m <= 6; ++m)
    for (int k = 1; k <= m; ++k)
      CHECK(stirling_function(m, k) == doctest::Approx(stirling2(m, k)).epsilon(1e-12));
  // beyond k > m the integer case vanishes
  CHECK(std::abs(stirling_function(2, 4)) < 1e-12);
}

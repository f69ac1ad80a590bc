#include "catch_amalgamated.hpp"

#include "hydrod/errors.hpp"
#include "hydrod/special_functions.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace hydrod;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("harmonic numbers: small orders") {
  CHECK(harmonic(0).h1 == 0.0);
  CHECK(harmonic(0).h2 == 0.0);
  CHECK(harmonicExact(3).h1 == Rational(11, 6));
  CHECK(harmonicExact(3).h2 == Rational(49, 36));
  CHECK(harmonicExact(2).h1 == Rational(3, 2));
  CHECK(harmonicExact(2).h2 == Rational(5, 4));
  CHECK(harmonic(3).h1 == 11.0 / 6.0);
  CHECK(harmonic(2).h2 == 1.25);
}

TEST_CASE("harmonic numbers: successive differences") {
  for (int n = 1; n <= kExactHarmonicLimit; ++n) {
    const auto a = harmonicExact(n), b = harmonicExact(n - 1);
    CHECK(a.h1 - b.h1 == Rational(1, n));
    CHECK(a.h2 - b.h2 == Rational(1, n * n));
  }
  for (int n = 1; n <= 200; ++n) {
    const auto a = harmonic(n), b = harmonic(n - 1);
    CHECK_THAT(a.h1 - b.h1, WithinRel(1.0 / n, 1e-15 * a.h1 * n));
    CHECK_THAT(a.h2 - b.h2, WithinRel(1.0 / (double(n) * n), 1e-15 * a.h2 * n * n));
  }
}

TEST_CASE("harmonic numbers: empty-sum convention and errors") {
  CHECK(harmonicNumber(0) == 0.0);
  CHECK(harmonicNumber(-4) == 0.0);
  CHECK(harmonicNumber2(-1) == 0.0);
  CHECK_THROWS_AS(harmonic(-1), InvalidArgument);
}

TEST_CASE("diharmonic numbers: examples") {
  CHECK(diharmonic(Sign::Plus, 1, 0) == 0.0);
  CHECK_THAT(diharmonic(Sign::Plus, 2, 1), WithinAbs(1.75, 1e-15));
  CHECK_THAT(diharmonic(Sign::Minus, 2, 2), WithinAbs(2.0, 1e-15));
  CHECK(diharmonic(Sign::Minus, 0, 5) == 0.0);
}

TEST_CASE("diharmonic numbers: single sum equals the lattice double sum") {
  for (int n = 0; n <= 20; ++n)
    for (int m = -10; m <= 10; ++m)
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        double dbl = 0.0;
        for (int i = 1; i <= n; ++i) {
          const int top = s == Sign::Plus ? m - 1 + i : m + 1 - i;
          for (int j = 1; j <= top; ++j)
            dbl += 1.0 / (double(i) * j);
        }
        const double single = diharmonic(s, n, m);
        CHECK_THAT(single, WithinAbs(dbl, 1e-14 * std::max(1.0, std::abs(dbl))));
      }
}

TEST_CASE("laguerre: examples") {
  CHECK(laguerre(0, 1.0, 5.0) == 1.0);
  CHECK_THAT(laguerre(1, 1.0, 2.0), WithinAbs(0.0, 1e-15));
  CHECK_THAT(laguerre(2, 1.0, 1.0), WithinAbs(0.5, 1e-15));
  CHECK_THROWS_AS(laguerre(-1, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("laguerre: explicit sum in 50-digit arithmetic") {
  using Big = boost::multiprecision::cpp_bin_float_50;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> alphaDist(0.0, 4.0), xDist(0.0, 20.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = alphaDist(rng), x = xDist(rng);
    for (int n = 0; n <= 15; ++n) {
      Big sum = 0, xpow = 1;
      for (int j = 0; j <= n; ++j) {
        Big binom = 1;
        for (int i = 1; i <= n - j; ++i)
          binom *= (Big(alpha) + j + i) / i;
        sum += binom * xpow;
        xpow *= -Big(x) / (j + 1);
      }
      const double ref = sum.convert_to<double>();
      INFO("n=" << n << " alpha=" << alpha << " x=" << x);
      CHECK(std::abs(laguerre(n, alpha, x) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("laguerre: three-term recurrence") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> alphaDist(0.0, 4.0), xDist(0.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha = alphaDist(rng), x = xDist(rng);
    for (int n = 1; n < 15; ++n) {
      const double lhs = (n + 1) * laguerre(n + 1, alpha, x);
      const double t1 = (2 * n + 1 + alpha - x) * laguerre(n, alpha, x);
      const double t2 = (n + alpha) * laguerre(n - 1, alpha, x);
      const double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2)});
      CHECK(std::abs(lhs - (t1 - t2)) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("sphereArea: ordinary spheres and a fractional dimension") {
  CHECK_THAT(sphereArea(2.0), WithinRel(4.0 * std::numbers::pi, 1e-15));
  CHECK_THAT(sphereArea(1.0), WithinRel(2.0 * std::numbers::pi, 1e-15));
  CHECK_THAT(sphereArea(2.0) / sphereArea(1.0), WithinRel(2.0, 1e-15));
  const double expected = 2.0 * std::pow(std::numbers::pi, 1.499) / boost::math::tgamma(1.499);
  CHECK_THAT(sphereArea(1.998), WithinRel(expected, 1e-14));
}

TEST_CASE("constants") {
  const auto &c = constants();
  CHECK_THAT(c.zeta2, WithinRel(std::numbers::pi * std::numbers::pi / 6.0, 1e-16));
  CHECK_THAT(c.eulerGamma, WithinRel(0.5772156649015329, 1e-16));
  CHECK(&c == &constants());
}

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace hydrod {

using Rational = boost::multiprecision::cpp_rational;

/// Mathematical constants used throughout the expansions.
struct Constants {
  double eulerGamma; // Euler-Mascheroni constant
  double zeta2;      // pi^2 / 6
  double lnPi;
};

/// Process-wide constants, initialised on first use and read-only afterwards.
const Constants &constants();

/// H_n and the second-order harmonic number H_n^(2) = sum 1/j^2.
struct HarmonicPair {
  int order = 0;
  double h1 = 0.0;
  double h2 = 0.0;
};

struct HarmonicPairExact {
  int order = 0;
  Rational h1;
  Rational h2;
};

/// Largest order for which harmonic numbers are held as exact rationals.
inline constexpr int kExactHarmonicLimit = 64;

/// Harmonic numbers of order n >= 0. Exact up to kExactHarmonicLimit and
/// rounded once to double; beyond that, summed in ascending order.
HarmonicPair harmonic(int n);

/// Exact rational harmonic numbers, n in [0, kExactHarmonicLimit].
HarmonicPairExact harmonicExact(int n);

/// H_k with the empty-sum convention H_k = 0 for k <= 0.
double harmonicNumber(int k);
/// H_k^(2) with the same convention.
double harmonicNumber2(int k);

enum class Sign { Plus, Minus };

/// diH_+(n, m) = sum_{i=1}^n H_{m-1+i} / i and
/// diH_-(n, m) = sum_{i=1}^n H_{m+1-i} / i, with H_k = 0 for k <= 0.
double diharmonic(Sign sign, int n, int m);

/// Associated Laguerre polynomial L_n^alpha(x) for real alpha,
/// sum_j binom(n+alpha, n-j) (-x)^j / j!, evaluated by upward recurrence.
double laguerre(int n, double alpha, double x);

/// Surface area of the unit d-sphere embedded in d+1 dimensions,
/// 2 pi^{(d+1)/2} / Gamma((d+1)/2).
double sphereArea(double d);

} // namespace hydrod

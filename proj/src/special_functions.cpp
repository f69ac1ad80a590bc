#include "hydrod/special_functions.hpp"

#include "hydrod/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace hydrod {

namespace {

struct ExactTable {
  std::array<Rational, kExactHarmonicLimit + 1> h1;
  std::array<Rational, kExactHarmonicLimit + 1> h2;
  std::array<double, kExactHarmonicLimit + 1> h1f;
  std::array<double, kExactHarmonicLimit + 1> h2f;

  ExactTable() {
    h1[0] = 0;
    h2[0] = 0;
    for (int j = 1; j <= kExactHarmonicLimit; ++j) {
      h1[j] = h1[j - 1] + Rational(1, j);
      h2[j] = h2[j - 1] + Rational(1, j * j);
    }
    for (int j = 0; j <= kExactHarmonicLimit; ++j) {
      h1f[j] = static_cast<double>(h1[j]);
      h2f[j] = static_cast<double>(h2[j]);
    }
  }
};

const ExactTable &exactTable() {
  static const ExactTable table;
  return table;
}

} // namespace

const Constants &constants() {
  static const Constants c{0.577215664901532860606512090082402431,
                           std::numbers::pi * std::numbers::pi / 6.0,
                           std::log(std::numbers::pi)};
  return c;
}

HarmonicPair harmonic(int n) {
  if (n < 0)
    throw InvalidArgument("harmonic: negative order " + std::to_string(n));
  if (n <= kExactHarmonicLimit) {
    const auto &t = exactTable();
    return {n, t.h1f[n], t.h2f[n]};
  }
  // ascending order, starting from the exact partial sum
  HarmonicPair out = harmonic(kExactHarmonicLimit);
  for (int j = kExactHarmonicLimit + 1; j <= n; ++j) {
    const double dj = j;
    out.h1 += 1.0 / dj;
    out.h2 += 1.0 / (dj * dj);
  }
  out.order = n;
  return out;
}

HarmonicPairExact harmonicExact(int n) {
  if (n < 0 || n > kExactHarmonicLimit)
    throw InvalidArgument("harmonicExact: order outside [0, 64]: " +
                          std::to_string(n));
  const auto &t = exactTable();
  return {n, t.h1[n], t.h2[n]};
}

double harmonicNumber(int k) { return k <= 0 ? 0.0 : harmonic(k).h1; }

double harmonicNumber2(int k) { return k <= 0 ? 0.0 : harmonic(k).h2; }

double diharmonic(Sign sign, int n, int m) {
  if (n < 0)
    throw InvalidArgument("diharmonic: negative n " + std::to_string(n));
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    const int index = sign == Sign::Plus ? m - 1 + i : m + 1 - i;
    sum += harmonicNumber(index) / i;
  }
  return sum;
}

double laguerre(int n, double alpha, double x) {
  if (n < 0)
    throw InvalidArgument("laguerre: negative degree " + std::to_string(n));
  // Upward recurrence; the explicit alternating sum loses ~x^n/n! relative
  // digits for large x.
  double prev = 1.0;
  if (n == 0)
    return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double sphereArea(double d) {
  if (!(d > 0.0))
    throw InvalidArgument("sphereArea: dimension must be positive");
  const double half = 0.5 * (d + 1.0);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

} // namespace hydrod

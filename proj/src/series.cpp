#include "hydrod/series.hpp"

#include "hydrod/errors.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <string>

namespace hydrod {

DimensionParam DimensionParam::fromEpsilon(double epsilon) {
  if (!(epsilon > -0.5 && epsilon < 0.5))
    throw OutOfRange("epsilon must lie in (-1/2, 1/2), got " +
                     std::to_string(epsilon));
  return {epsilon, 3.0 - 2.0 * epsilon};
}

DimensionParam DimensionParam::fromDimension(double dim) {
  if (!(dim > 2.0 && dim < 4.0))
    throw OutOfRange("dimension must lie in (2, 4), got " +
                     std::to_string(dim));
  return {(3.0 - dim) / 2.0, dim};
}

SeriesTable::SeriesTable(int ell, DimensionParam eps, int maxOrder,
                         std::vector<double> coeffs)
    : ell_(ell), eps_(eps), maxOrder_(maxOrder), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != index(maxOrder_ + 1, 0))
    throw InvalidArgument("SeriesTable: coefficient count does not match order");
}

double SeriesTable::a(int j, int k) const {
  if (j < 0 || k < 0 || k > j || j > maxOrder_)
    return 0.0;
  return coeffs_[index(j, k)];
}

SeriesTable buildCoefficients(int ell, DimensionParam eps, int maxOrder) {
  if (ell < 0)
    throw InvalidArgument("buildCoefficients: negative ell");
  if (maxOrder < 2)
    throw InvalidArgument("buildCoefficients: maxOrder must be >= 2");
  const double e = eps.epsilon;
  std::vector<double> c(static_cast<std::size_t>(maxOrder + 1) * (maxOrder + 2) /
                        2);
  auto at = [&](int j, int k) -> double & {
    return c[static_cast<std::size_t>(j) * (j + 1) / 2 + k];
  };
  auto prev = [&](int j, int k) {
    return (k < 0 || k > j) ? 0.0 : at(j, k);
  };
  at(0, 0) = 1.0;
  for (int j = 1; j <= maxOrder; ++j) {
    for (int k = 0; k <= j; ++k) {
      const double denom =
          (j + 2.0 * e * k) * (j + 2.0 * ell + 1.0 + 2.0 * e * (k - 1));
      if (std::abs(denom) < 1e-12)
        throw DegenerateDenominator("series recursion denominator vanishes at j=" +
                                    std::to_string(j) + ", k=" +
                                    std::to_string(k));
      at(j, k) = (prev(j - 1, k) * (j + ell + e * (2.0 * k - 1.0)) -
                  prev(j - 1, k - 1)) /
                 denom;
    }
  }
  return SeriesTable(ell, eps, maxOrder, std::move(c));
}

SeriesValue evaluateSeries(const SeriesTable &table, double nbar, double rho,
                           double tolerance) {
  if (rho < 0.0)
    throw InvalidArgument("evaluateSeries: negative rho");
  const double e = table.eps().epsilon;
  SeriesValue out;
  if (rho == 0.0) {
    // limits of the first row of the derivative
    const double a10 = table.a(1, 0), a11 = table.a(1, 1) * nbar;
    if (e > 0.0)
      out.derivative = a10;
    else if (e == 0.0)
      out.derivative = a10 + a11;
    else
      out.derivative = std::copysign(std::numeric_limits<double>::infinity(),
                                     a11);
    return out;
  }

  // rho^{j + 2 eps k} nbar^k = rho^j * t^k with t = nbar * rho^{2 eps}
  const double t = nbar * std::exp(2.0 * e * std::log(rho));
  const int order = table.maxOrder();
  double value = 0.0, d1 = 0.0, d2 = 0.0, lastRow = 0.0;
  double rhoj = 1.0;
  for (int j = 0; j <= order; ++j) {
    double tk = 1.0;
    double rowValue = 0.0, rowD1 = 0.0, rowD2 = 0.0;
    for (int k = 0; k <= j; ++k) {
      const double term = table.a(j, k) * tk * rhoj;
      const double p = j + 2.0 * e * k;
      rowValue += term;
      rowD1 += p * term;
      rowD2 += p * (p - 1.0) * term;
      if (j == order)
        lastRow = std::max(lastRow, std::abs(term));
      tk *= t;
    }
    value += rowValue;
    d1 += rowD1;
    d2 += rowD2;
    rhoj *= rho;
  }
  out.value = value;
  out.derivative = d1 / rho;
  out.secondDerivative = d2 / (rho * rho);
  out.truncationEstimate = lastRow;
  if (out.truncationEstimate > tolerance * std::abs(value))
    throw TruncationNotConverged(
        "series truncation estimate " + std::to_string(out.truncationEstimate) +
        " exceeds tolerance at rho=" + std::to_string(rho));
  return out;
}

SeriesTable buildConvergedTable(int ell, DimensionParam eps, double nbar,
                                double rho, double tolerance, int maxOrder) {
  if (maxOrder < 2 || maxOrder > kMaxSeriesOrder)
    throw InvalidArgument("series order cap must lie in [2, " +
                          std::to_string(kMaxSeriesOrder) + "]");
  for (int order = std::min(kDefaultSeriesOrder, maxOrder);;
       order = std::min(2 * order, maxOrder)) {
    auto table = buildCoefficients(ell, eps, order);
    try {
      evaluateSeries(table, nbar, rho, tolerance);
      return table;
    } catch (const TruncationNotConverged &) {
      if (order == maxOrder)
        throw;
    }
  }
}

bool exponentsDistinct(double epsilon, int maxOrder, double tol) {
  std::vector<double> exps;
  for (int j = 0; j <= maxOrder; ++j)
    for (int k = 0; k <= j; ++k)
      exps.push_back(j + 2.0 * epsilon * k);
  std::sort(exps.begin(), exps.end());
  for (std::size_t i = 1; i < exps.size(); ++i)
    if (exps[i] - exps[i - 1] <= tol)
      return false;
  return true;
}

double squaredSeriesMoment(const SeriesTable &table, double nbar, double rho0,
                           double shift, int headOrder) {
  const int order = table.maxOrder();
  const double e = table.eps().epsilon;
  // combined coefficients of rho^{J + 2 eps K}, J = j1 + j2 <= order
  std::vector<std::vector<double>> combined(order + 1);
  for (int J = 0; J <= order; ++J)
    combined[J].assign(J + 1, 0.0);
  std::vector<double> nbarPow(order + 1, 1.0);
  for (int k = 1; k <= order; ++k)
    nbarPow[k] = nbarPow[k - 1] * nbar;

  for (int j1 = 0; j1 <= order; ++j1)
    for (int k1 = 0; k1 <= j1; ++k1) {
      const double c1 = table.a(j1, k1) * nbarPow[k1];
      for (int j2 = 0; j1 + j2 <= order; ++j2) {
        if (j1 <= headOrder && j2 <= headOrder)
          continue;
        for (int k2 = 0; k2 <= j2; ++k2)
          combined[j1 + j2][k1 + k2] += c1 * table.a(j2, k2) * nbarPow[k2];
      }
    }

  double sum = 0.0;
  for (int J = 0; J <= order; ++J)
    for (int K = 0; K <= J; ++K) {
      const double c = combined[J][K];
      if (c == 0.0)
        continue;
      const double a = shift + J + 2.0 * e * K + 1.0;
      if (!(a > 0.0))
        throw InvalidArgument("squaredSeriesMoment: divergent power at origin");
      sum += c * boost::math::tgamma_lower(a, rho0);
    }
  return sum;
}

} // namespace hydrod

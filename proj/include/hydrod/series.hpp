#pragma once

#include <cstddef>
#include <vector>

namespace hydrod {

/// Regularisation parameter: D = 3 - 2 epsilon, restricted to 2 < D < 4.
struct DimensionParam {
  double epsilon = 0.0;
  double dim = 3.0;

  static DimensionParam fromEpsilon(double epsilon);
  static DimensionParam fromDimension(double dim);
};

/// Triangular coefficient table a_{jk} (0 <= k <= j <= maxOrder) of the
/// double power series
///   L(rho) = sum_j sum_k a_{jk} nbar^k rho^{j + 2 eps k},
/// normalised by a_{00} = 1. Immutable once built.
class SeriesTable {
public:
  SeriesTable(int ell, DimensionParam eps, int maxOrder,
              std::vector<double> coeffs);

  int ell() const { return ell_; }
  const DimensionParam &eps() const { return eps_; }
  int maxOrder() const { return maxOrder_; }

  /// a_{jk}; zero outside the triangle.
  double a(int j, int k) const;

  /// Exponent j + 2 eps k of the (j, k) term.
  double exponent(int j, int k) const { return j + 2.0 * eps_.epsilon * k; }

private:
  static std::size_t index(int j, int k) {
    return static_cast<std::size_t>(j) * (j + 1) / 2 + k;
  }

  int ell_;
  DimensionParam eps_;
  int maxOrder_;
  std::vector<double> coeffs_;
};

struct SeriesValue {
  double value = 1.0;
  double derivative = 0.0;
  double secondDerivative = 0.0;
  double truncationEstimate = 0.0; // largest |term| in the last retained row
};

inline constexpr int kDefaultSeriesOrder = 40;
inline constexpr int kMaxSeriesOrder = 120;
inline constexpr double kSeriesTolerance = 1e-14;

/// Runs the coefficient recursion from a_{00} = 1. Throws
/// DegenerateDenominator if any recursion denominator is below 1e-12.
SeriesTable buildCoefficients(int ell, DimensionParam eps, int maxOrder);

/// Sums the series and its first two rho-derivatives term by term. Throws
/// TruncationNotConverged when truncationEstimate / |value| > tolerance.
SeriesValue evaluateSeries(const SeriesTable &table, double nbar, double rho,
                           double tolerance = kSeriesTolerance);

/// Builds a table starting at kDefaultSeriesOrder and doubling (up to
/// maxOrder <= kMaxSeriesOrder) until the series converges to `tolerance` at rho.
SeriesTable buildConvergedTable(int ell, DimensionParam eps, double nbar,
                                double rho, double tolerance = kSeriesTolerance,
                                int maxOrder = kMaxSeriesOrder);

/// True when all exponents j + 2 eps k, k <= j <= maxOrder, are separated by
/// more than `tol`. The recursion stays valid when exponents coincide; this
/// reports whether the terms are linearly independent powers.
bool exponentsDistinct(double epsilon, int maxOrder, double tol = 1e-9);

/// int_0^rho0 rho^shift e^{-rho} [L(rho)^2 - Lhead(rho)^2] drho, where Lhead
/// is the series truncated to rows j <= headOrder (headOrder < 0 means no
/// subtraction). Each power is integrated exactly via the lower incomplete
/// gamma function; every retained exponent must exceed -1.
double squaredSeriesMoment(const SeriesTable &table, double nbar, double rho0,
                           double shift, int headOrder = -1);

} // namespace hydrod

#pragma once

#include "hydrod/series.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace hydrod {

/// Quantum numbers of a bound state: n >= ell + 1, nr = n - ell - 1.
struct StateLabel {
  int n = 1;
  int ell = 0;
  int nr = 0;

  StateLabel() = default;
  StateLabel(int n, int ell);

  friend bool operator==(const StateLabel &, const StateLabel &) = default;
};

/// Dimensionful context. `coupling` is C, the coefficient of r^{-(D-2)} in
/// -V(r): C = Gamma(1/2 - eps) muBar^{2 eps} Z alpha / pi^{1/2 - eps}.
struct PhysicalScales {
  double mass = 1.0;
  double zAlpha = 1.0;
  double mu = 1.0;
  double muBar = 1.0; // muBar^2 = mu^2 e^{gamma_E} / (4 pi)
  double coupling = 1.0;

  static PhysicalScales fromMu(double mass, double zAlpha, double mu,
                               DimensionParam eps);
};

/// m = 1 and 4 pi Z alpha muBar^{2 eps} / Omega_{D-1} = 1, so C = 1/(D-2).
PhysicalScales andrewSuppleeCoupling(DimensionParam eps);

/// Extra integrand accumulated alongside the solution: f(rho, L).
using Integrand = std::function<double(double rho, double L)>;

struct RadialSolution {
  std::vector<double> grid; // accepted step points, grid[0] = rho0
  std::vector<double> L;
  std::vector<double> dL;
  /// partial[i][g] = int_{rho0}^{grid[g]} integrand_i(rho, L) drho
  std::vector<std::vector<double>> partial;
  int nodeCount = 0;
  int tailSign = 1;
  /// Set when |L| exceeded kOverflowLimit; integration stopped there.
  std::optional<double> overflowAt;
  /// Stitched eigenfunctions only: matching radius and the relative
  /// log-derivative mismatch there.
  std::optional<double> matchRadius;
  double matchDefect = 0.0;
};

inline constexpr double kOverflowLimit = 1e150;

struct ShootingOptions {
  double rho0 = 0.1;
  double rhoMax = 0.0;          // <= 0 selects 50 + 10 n
  double odeTolerance = 1e-13;  // local error per unit step
  double nbarTolerance = 1e-12; // final bracket width
  double tailTolerance = 1e-12; // relative tail bound for the norm integral
  int maxSeriesOrder = kMaxSeriesOrder;
};

double defaultRhoMax(int n);

/// Integrates the reduced radial equation from rho0 (initial data from the
/// series) to rhoMax with an adaptive embedded 7(8) Runge-Kutta pair.
/// Throws StepUnderflow if the step falls below 1e-12.
RadialSolution integrateOutward(int ell, DimensionParam eps, double nbar,
                                double rho0, double rhoMax, double tol,
                                const std::vector<Integrand> &extras = {},
                                int maxSeriesOrder = kMaxSeriesOrder);

/// Eigenfunction at a converged nbar: outward from the series region to
/// rhoMatch, inward from rhoMax (where the divergent solution decays) to
/// rhoMatch, scaled to agree there. Extras are accumulated over the whole
/// range, so partial[i].back() is the integral over [rho0, rhoMax].
RadialSolution stitchedSolution(int ell, DimensionParam eps, double nbar,
                                double rho0, double rhoMatch, double rhoMax,
                                double tol,
                                const std::vector<Integrand> &extras = {},
                                int maxSeriesOrder = kMaxSeriesOrder);

double defaultRhoMatch(int n);

struct EigenResult {
  StateLabel state;
  DimensionParam eps;
  double nbar = 0.0;
  double normIntegral = 0.0;
  double normUncertainty = 0.0; // spread of I across the final bracket
  double bracketWidth = 0.0;
  double rhoMax = 0.0;
  int nodeCount = 0;
};

/// Shooting eigensolver: bracket by node count on (max(0.1, n-1), n+1), then
/// bisect on the sign of the outward/inward Wronskian at the matching radius
/// down to `tol` (>= 1e-12).
EigenResult solveNbar(const StateLabel &state, DimensionParam eps,
                      double tol = 1e-12);
EigenResult solveNbar(const StateLabel &state, DimensionParam eps,
                      const ShootingOptions &options);

struct NormDetail {
  double value = 0.0;
  double tailBound = 0.0; // relative to value, beyond the last grid point
};

/// I_{n ell} = (n+ell)! / (2 n nr! [(2 ell+1)!]^2)
///             * int_0^inf rho^{D-1+2ell} e^{-rho} L^2 drho.
/// [0, rho0] comes from the series term by term; the rest from extras[0] of
/// the solution, which must be normIntegrand (see stitchedSolution). Throws
/// TailNotNegligible when the integrand at the last grid point is not
/// negligible.
double normalizationIntegral(const StateLabel &state, DimensionParam eps,
                             double nbar, const RadialSolution &solution,
                             const SeriesTable &series,
                             double tailTolerance = 1e-12);
NormDetail normalizationDetail(const StateLabel &state, DimensionParam eps,
                               double nbar, const RadialSolution &solution,
                               const SeriesTable &series,
                               double tailTolerance = 1e-12);

/// rho^{D-1+2ell} e^{-rho} L^2
Integrand normIntegrand(int ell, DimensionParam eps);

struct PhysicalValues {
  double gammaBar = 0.0;
  double energy = 0.0;
  double phiBar = 0.0;
};

/// gammaBar from nbar = 2 m C / (2 gammaBar)^{1+2eps}, E = -gammaBar^2/(2m),
/// phiBar^2 = 2^{D-2} Gamma(D/2) gammaBar^D / (pi^{D/2} I).
PhysicalValues physicalMap(const EigenResult &result,
                           const PhysicalScales &scales);

} // namespace hydrod

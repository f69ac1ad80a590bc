#pragma once

#include "hydrod/radial_solver.hpp"

#include <vector>

namespace hydrod {

// <(V')^2> for S states in D = 3 - 2 eps, written as
//   prefactor * braces,  prefactor = pi m (Z alpha)^3 phiBar^2 muBar^{2 eps},
// with braces = polePart / eps + finitePart.

struct VprimeSqResult {
  StateLabel state;
  double eps = 0.0;
  double polePart = 0.0;
  double finitePart = 0.0;
  double prefactor = 0.0;
  double braces = 0.0; // polePart / eps + finitePart
};

/// First three series terms: 1 + rho/2 - nbar rho^{1+2eps} / (2 (1 + 2eps)).
struct LHatSpec {
  double nbar = 1.0;
  double eps = 0.0;
};

double lhatEval(const LHatSpec &spec, double rho);

/// Closed form; braces = -2/eps - 8L + 8H_n + 4/(3n^2) - 4/n - 16/3.
/// Throws ZeroEpsilon at eps = 0 and InvalidArgument for ell > 0.
VprimeSqResult vprimeSqClosedForm(const StateLabel &state, double eps,
                                  const PhysicalScales &scales, double phiBarSq);

/// Numerical evaluation on the converged eigenfunction: the Lhat^2 part of
/// the integrand in closed form (Gamma functions), the remainder by series on
/// [0, rho0] and by quadrature along the ODE solution beyond. The pole is the
/// exact -2; finitePart is what is left of the braces.
/// Throws SplitMismatch if the remainder is not regular at the origin.
VprimeSqResult vprimeSqNumeric(const StateLabel &state, double eps,
                               const PhysicalScales &scales);
VprimeSqResult vprimeSqNumeric(const EigenResult &eigen,
                               const PhysicalScales &scales);

/// Scales with mu = 2 gamma (L = 0) for m = Z alpha = 1.
PhysicalScales unitScalesAtZeroLog(const StateLabel &state, double eps);

struct PoleFit {
  double pole = 0.0;
  double uncertainty = 0.0;
};

/// Fits eps * braces from vprimeSqNumeric at L = 0 to a quadratic in eps and
/// returns the constant term.
PoleFit extractPoleCoefficient(const StateLabel &state,
                               const std::vector<double> &epsList = {0.02, 0.01, 0.005});

} // namespace hydrod

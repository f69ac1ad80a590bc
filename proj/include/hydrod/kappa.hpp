#pragma once

#include "hydrod/radial_solver.hpp"

namespace hydrod {

// Second-order matrix element kappa_{n ell}, defined by
//   E_n kappa = < W g_n W >,   W(r) = V(r) ln(2 gamma r),
// with g_n the reduced Coulomb Green's function of ordinary three-dimensional
// hydrogen. Computed by the Dalgarno-Lewis method: solve
//   (E_n - H_ell) chi = (W - <W>) R_{n ell},   chi orthogonal to R_{n ell},
// then kappa = < R | (W - <W>) | chi > / E_n.

struct KappaResult {
  StateLabel state;
  double kappa = 0.0;
  double meanW = 0.0;              // <W>
  double orthogonalityDefect = 0.0; // |<R|chi>| after projection
  double residualNorm = 0.0;        // relative ODE residual of chi
};

struct KappaOptions {
  double mass = 1.0;
  double zAlpha = 1.0;
  double tolerance = 1e-11;
  double outerRadius = 0.0; // in Bohr radii 1/(m Z alpha); <= 0 selects 60 n
};

/// W(r) = -ln(2 gamma r) / r in units m = Z alpha = 1 (gamma = 1/n).
double perturbationW(const StateLabel &state, double r);

/// Normalised three-dimensional radial function u = r R_{n ell}(r) and its
/// derivative, for general m and Z alpha.
struct HydrogenRadial {
  double u = 0.0;
  double du = 0.0;
};
HydrogenRadial hydrogenRadial(const StateLabel &state, double r,
                              double mass = 1.0, double zAlpha = 1.0);

/// Throws SolveFailed if the particular solution cannot be built to tolerance.
KappaResult dalgarnoLewisSolve(const StateLabel &state,
                               const KappaOptions &options = {});
KappaResult dalgarnoLewisSolve(const StateLabel &state, double tolerance);

} // namespace hydrod

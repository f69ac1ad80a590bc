#pragma once

#include "hydrod/radial_solver.hpp"

#include <optional>
#include <vector>

namespace hydrod {

// Closed-form epsilon expansions around three dimensions. Energies, gamma and
// the contact amplitude depend on mu through L = ln(mu / (2 gamma)) with
// gamma = m Z alpha / n the three-dimensional momentum scale; xi = nbar/n and
// I do not.

struct ExpansionCoefficients {
  StateLabel state;
  std::vector<double> xi;      // xi[0] = 1, xi[1], then xi[2] when known
  std::vector<double> iCoeffs; // I[0] = 1, I[1]
  double phiBracket = 0.0;     // O(eps) bracket of phiBar without the 3L term
  double logScale = 0.0;       // L
};

/// L = ln(mu / (2 gamma)), gamma = m Z alpha / n.
double logScale(const StateLabel &state, const PhysicalScales &scales);

/// xi^[1] = 2 gamma_E - 2 H_{n+ell} - 1/n.
double xi1(const StateLabel &state);

/// Coefficient of eps in the first-order energy shift: 4 E_n (L + H_{n+ell}).
double deltaE1(const StateLabel &state, const PhysicalScales &scales);

/// Ground-state energy in units of its three-dimensional value:
/// [1, 4L + 6, 8L^2 + 16L - 4 gamma_E^2 + 15 - zeta(2) + 4 kappa_10].
std::vector<double> groundStateEnergySeries(const PhysicalScales &scales,
                                            double kappa10);

/// xi^[2] of the ground state: 4 gamma_E^2 - 6 gamma_E + 2 zeta(2) - 2 kappa_10.
double groundStateXi2(double kappa10);

/// Full O(eps) coefficient inside the braces of the phiBar expansion,
/// including the 3L term.
double phiOrder1(const StateLabel &state, const PhysicalScales &scales);

/// I^[1]; independent of mu.
double iOrder1(const StateLabel &state);

/// n (1 + xi1 eps + xi2 eps^2).
double nbarPerturbative(const StateLabel &state, double epsilon, double xi2);

/// 1 + I1 eps.
double normPerturbative(const StateLabel &state, double epsilon);

ExpansionCoefficients expansionCoefficients(const StateLabel &state,
                                            const PhysicalScales &scales,
                                            std::optional<double> kappa10 = {});

} // namespace hydrod

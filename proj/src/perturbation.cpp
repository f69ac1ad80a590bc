#include "hydrod/perturbation.hpp"

#include "hydrod/errors.hpp"
#include "hydrod/special_functions.hpp"

#include <cmath>

namespace hydrod {

namespace {

double bohrGamma(const StateLabel &state, const PhysicalScales &scales) {
  return scales.mass * scales.zAlpha / state.n;
}

// phiBar bracket without 3L
double phiBracketNoLog(const StateLabel &state) {
  const auto &c = constants();
  const int n = state.n;
  const auto h = harmonic(n + state.ell);
  const auto hr = harmonic(state.nr);
  return 2.0 * n * diharmonic(Sign::Plus, n + state.ell, -state.nr) -
         n * (h.h1 * h.h1 - h.h2) + n * (hr.h1 * hr.h1 + hr.h2) + 2.0 * h.h1 +
         2.0 * harmonicNumber(2 * state.ell + 1) +
         0.5 * (c.lnPi - c.eulerGamma) - 2.0 + 2.0 / n - 2.0 * n * c.zeta2;
}

} // namespace

double logScale(const StateLabel &state, const PhysicalScales &scales) {
  return std::log(scales.mu / (2.0 * bohrGamma(state, scales)));
}

double xi1(const StateLabel &state) {
  return 2.0 * constants().eulerGamma - 2.0 * harmonicNumber(state.n + state.ell) -
         1.0 / state.n;
}

double deltaE1(const StateLabel &state, const PhysicalScales &scales) {
  const double gamma = bohrGamma(state, scales);
  const double bohrEnergy = -gamma * gamma / (2.0 * scales.mass);
  return 4.0 * bohrEnergy *
         (logScale(state, scales) + harmonicNumber(state.n + state.ell));
}

std::vector<double> groundStateEnergySeries(const PhysicalScales &scales,
                                            double kappa10) {
  const auto &c = constants();
  const double L = logScale(StateLabel(1, 0), scales);
  return {1.0, 4.0 * L + 6.0,
          8.0 * L * L + 16.0 * L - 4.0 * c.eulerGamma * c.eulerGamma + 15.0 -
              c.zeta2 + 4.0 * kappa10};
}

double groundStateXi2(double kappa10) {
  const auto &c = constants();
  return 4.0 * c.eulerGamma * c.eulerGamma - 6.0 * c.eulerGamma +
         2.0 * c.zeta2 - 2.0 * kappa10;
}

double phiOrder1(const StateLabel &state, const PhysicalScales &scales) {
  return 3.0 * logScale(state, scales) + phiBracketNoLog(state);
}

double iOrder1(const StateLabel &state) {
  const auto &c = constants();
  const int n = state.n;
  const auto h = harmonic(n + state.ell);
  const auto hr = harmonic(state.nr);
  return 2.0 * (n * (h.h1 * h.h1 - h.h2) - n * (hr.h1 * hr.h1 + hr.h2) -
                2.0 * n * diharmonic(Sign::Plus, n + state.ell, -state.nr) +
                2.0 * n * c.zeta2 + h.h1 -
                2.0 * harmonicNumber(2 * state.ell + 1) + 1.0 - 0.5 / n +
                c.eulerGamma);
}

double nbarPerturbative(const StateLabel &state, double epsilon, double xi2) {
  return state.n * (1.0 + xi1(state) * epsilon + xi2 * epsilon * epsilon);
}

double normPerturbative(const StateLabel &state, double epsilon) {
  return 1.0 + iOrder1(state) * epsilon;
}

ExpansionCoefficients expansionCoefficients(const StateLabel &state,
                                            const PhysicalScales &scales,
                                            std::optional<double> kappa10) {
  ExpansionCoefficients out;
  out.state = state;
  out.xi = {1.0, xi1(state)};
  if (kappa10) {
    if (state.n != 1 || state.ell != 0)
      throw InvalidArgument("closed-form xi^[2] is available for 1S only");
    out.xi.push_back(groundStateXi2(*kappa10));
  }
  out.iCoeffs = {1.0, iOrder1(state)};
  out.phiBracket = phiBracketNoLog(state);
  out.logScale = logScale(state, scales);
  return out;
}

} // namespace hydrod

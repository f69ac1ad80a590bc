#include "hydrod/expectation.hpp"

#include "hydrod/errors.hpp"
#include "hydrod/series.hpp"
#include "hydrod/special_functions.hpp"

#include <cmath>
#include <algorithm>
#include <future>
#include <numbers>
#include <string>

namespace hydrod {

double lhatEval(const LHatSpec &spec, double rho) {
  if (rho < 0.0)
    throw InvalidArgument("lhatEval: rho must be nonnegative");
  if (rho == 0.0)
    return 1.0;
  return 1.0 + 0.5 * rho -
         spec.nbar * std::pow(rho, 1.0 + 2.0 * spec.eps) / (2.0 * (1.0 + 2.0 * spec.eps));
}

namespace {

void requireSState(const StateLabel &state) {
  if (state.ell != 0)
    throw InvalidArgument("<(V')^2> is only handled for ell = 0 (got ell = " +
                          std::to_string(state.ell) + ")");
}

} // namespace

VprimeSqResult vprimeSqClosedForm(const StateLabel &state, double eps,
                                  const PhysicalScales &scales, double phiBarSq) {
  requireSState(state);
  if (eps == 0.0)
    throw ZeroEpsilon("<(V')^2> has a pole at eps = 0");
  const int n = state.n;
  const double gamma = scales.mass * scales.zAlpha / n;
  const double L = std::log(scales.mu / (2.0 * gamma));
  VprimeSqResult out;
  out.state = state;
  out.eps = eps;
  out.polePart = -2.0;
  out.finitePart = -8.0 * L + 8.0 * harmonic(n).h1 + 4.0 / (3.0 * n * n) -
                   4.0 / n - 16.0 / 3.0;
  out.braces = out.polePart / eps + out.finitePart;
  out.prefactor = std::numbers::pi * scales.mass * std::pow(scales.zAlpha, 3) *
                  phiBarSq * std::pow(scales.muBar, 2.0 * eps);
  return out;
}

VprimeSqResult vprimeSqNumeric(const EigenResult &eigen,
                               const PhysicalScales &scales) {
  const StateLabel &state = eigen.state;
  requireSState(state);
  const double eps = eigen.eps.epsilon;
  if (!(eps > 0.0005 && eps <= 0.1))
    throw OutOfRange("vprimeSqNumeric: eps must lie in (0.0005, 0.1]");
  const double nbar = eigen.nbar;
  const LHatSpec hat{nbar, eps};
  const double shift = -2.0 + 2.0 * eps;

  auto remainder = [&](double rho, double L) {
    const double h = lhatEval(hat, rho);
    return std::pow(rho, shift) * std::exp(-rho) * (L - h) * (L + h);
  };

  // The remainder must vanish faster than rho^{-1+2eps}: Lhat has to carry
  // exactly the j <= 1 series terms, and what is left of L - Lhat near the
  // origin must be bounded by the j >= 2 terms alone.
  const ShootingOptions opts;
  const auto table = buildConvergedTable(0, eigen.eps, nbar, opts.rho0);
  const double headDefect =
      std::max({std::abs(table.a(0, 0) - 1.0), std::abs(table.a(1, 0) - 0.5),
                std::abs(table.a(1, 1) + 1.0 / (2.0 * (1.0 + 2.0 * eps)))});
  if (headDefect > 1e-12)
    throw SplitMismatch("Lhat disagrees with the series head by " +
                        std::to_string(headDefect));
  for (double rho : {1e-3, 1e-4}) {
    double bound = 0.0;
    for (int j = 2; j <= table.maxOrder(); ++j)
      for (int k = 0; k <= j; ++k)
        bound += std::abs(table.a(j, k)) * std::pow(nbar, k) *
                 std::pow(rho, table.exponent(j, k));
    const double diff =
        std::abs(evaluateSeries(table, nbar, rho).value - lhatEval(hat, rho));
    if (diff > 1.000001 * bound + 1e-15)
      throw SplitMismatch("L - Lhat is not O(rho^2) at the origin");
  }

  const double b = -nbar / (2.0 * (1.0 + 2.0 * eps));
  const double gammaSum = std::tgamma(-1.0 + 2.0 * eps) + std::tgamma(2.0 * eps) +
                          0.25 * std::tgamma(1.0 + 2.0 * eps) +
                          2.0 * b * std::tgamma(4.0 * eps) +
                          b * std::tgamma(1.0 + 4.0 * eps) +
                          b * b * std::tgamma(1.0 + 6.0 * eps);

  const double head = squaredSeriesMoment(table, nbar, opts.rho0, shift, 1);
  const auto sol = stitchedSolution(0, eigen.eps, nbar, opts.rho0,
                                    defaultRhoMatch(state.n), eigen.rhoMax,
                                    opts.odeTolerance, {remainder});
  const double J = gammaSum + head + sol.partial[0].back();

  const double D = eigen.eps.dim;
  const PhysicalValues phys = physicalMap(eigen, scales);
  const double m = scales.mass, za = scales.zAlpha, C = scales.coupling;
  VprimeSqResult out;
  out.state = state;
  out.eps = eps;
  out.braces = (D - 2.0) * (D - 2.0) * C * C * sphereArea(D - 1.0) *
               std::pow(2.0 * phys.gammaBar, 1.0 - 2.0 * eps) * J /
               (std::numbers::pi * m * za * za * za * std::pow(scales.muBar, 2.0 * eps));
  out.polePart = -2.0;
  out.finitePart = out.braces - out.polePart / eps;
  out.prefactor = std::numbers::pi * m * za * za * za * phys.phiBar * phys.phiBar *
                  std::pow(scales.muBar, 2.0 * eps);
  return out;
}

VprimeSqResult vprimeSqNumeric(const StateLabel &state, double eps,
                               const PhysicalScales &scales) {
  requireSState(state);
  if (!(eps > 0.0005 && eps <= 0.1))
    throw OutOfRange("vprimeSqNumeric: eps must lie in (0.0005, 0.1]");
  return vprimeSqNumeric(solveNbar(state, DimensionParam::fromEpsilon(eps)), scales);
}

PhysicalScales unitScalesAtZeroLog(const StateLabel &state, double eps) {
  return PhysicalScales::fromMu(1.0, 1.0, 2.0 / state.n,
                                DimensionParam::fromEpsilon(eps));
}

PoleFit extractPoleCoefficient(const StateLabel &state,
                               const std::vector<double> &epsList) {
  if (epsList.size() < 3)
    throw InvalidArgument("need at least three eps values");
  std::vector<std::future<double>> jobs;
  for (double e : epsList)
    jobs.push_back(std::async(std::launch::async, [state, e] {
      return e * vprimeSqNumeric(state, e, unitScalesAtZeroLog(state, e)).braces;
    }));
  std::vector<double> y;
  for (auto &j : jobs)
    y.push_back(j.get());

  // Lagrange extrapolation to eps = 0 through the last three points (the list
  // is expected in decreasing eps), and through the first three as a check
  auto extrapolate = [&](std::size_t i0) {
    double s = 0.0;
    for (std::size_t i = i0; i < i0 + 3; ++i) {
      double w = 1.0;
      for (std::size_t j = i0; j < i0 + 3; ++j)
        if (j != i)
          w *= epsList[j] / (epsList[j] - epsList[i]);
      s += w * y[i];
    }
    return s;
  };
  PoleFit out;
  out.pole = extrapolate(epsList.size() - 3);
  out.uncertainty = epsList.size() > 3 ? std::abs(extrapolate(0) - out.pole) : 0.0;
  // linear extrapolation from the two smallest points as a crude cross-check
  const std::size_t a = epsList.size() - 2, c = epsList.size() - 1;
  const double linear = (epsList[a] * y[c] - epsList[c] * y[a]) / (epsList[a] - epsList[c]);
  out.uncertainty = std::max(out.uncertainty, std::abs(linear - out.pole));
  return out;
}

} // namespace hydrod

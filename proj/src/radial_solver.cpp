#include "hydrod/radial_solver.hpp"

#include "hydrod/errors.hpp"
#include "hydrod/special_functions.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace hydrod {

namespace odeint = boost::numeric::odeint;

StateLabel::StateLabel(int n_, int ell_) : n(n_), ell(ell_), nr(n_ - ell_ - 1) {
  if (ell < 0 || n < ell + 1)
    throw InvalidArgument("invalid state (n=" + std::to_string(n_) +
                          ", ell=" + std::to_string(ell_) + ")");
}

PhysicalScales PhysicalScales::fromMu(double mass, double zAlpha, double mu,
                                      DimensionParam eps) {
  if (!(mass > 0.0 && zAlpha > 0.0 && mu > 0.0))
    throw InvalidArgument("physical scales must be positive");
  const double e = eps.epsilon;
  const double muBar =
      mu * std::sqrt(std::exp(constants().eulerGamma) / (4.0 * std::numbers::pi));
  const double coupling = std::tgamma(0.5 - e) * std::pow(muBar, 2.0 * e) *
                          zAlpha / std::pow(std::numbers::pi, 0.5 - e);
  return {mass, zAlpha, mu, muBar, coupling};
}

PhysicalScales andrewSuppleeCoupling(DimensionParam eps) {
  if (!(eps.dim > 2.0 && eps.dim < 4.0))
    throw OutOfRange("Andrew-Supplee units need 2 < D < 4");
  PhysicalScales s;
  s.mass = 1.0;
  s.muBar = 1.0;
  s.mu = std::sqrt(4.0 * std::numbers::pi * std::exp(-constants().eulerGamma));
  s.zAlpha = sphereArea(eps.dim - 1.0) / (4.0 * std::numbers::pi);
  s.coupling = 1.0 / (eps.dim - 2.0);
  return s;
}

double defaultRhoMax(int n) { return 50.0 + 10.0 * n; }

Integrand normIntegrand(int ell, DimensionParam eps) {
  const double power = eps.dim - 1.0 + 2.0 * ell;
  return [power](double rho, double L) {
    return std::exp(power * std::log(rho) - rho) * L * L;
  };
}

double defaultRhoMatch(int n) { return std::max(1.0, static_cast<double>(n)); }

namespace {

using State = std::vector<double>;

int signOf(double x) { return x < 0.0 ? -1 : 1; }

// Reduced radial equation in a direction-agnostic form: `dir` = +1 integrates
// in rho, -1 integrates in tau = -rho.
struct RadialSystem {
  int ell;
  double epsilon;
  double nbar;
  const std::vector<Integrand> *extras;
  double dir;

  void operator()(const State &x, State &dx, double t) const {
    const double rho = dir * t;
    const double centre = ell + 1.0 - epsilon;
    const double potential = nbar * std::exp((2.0 * epsilon - 1.0) * std::log(rho));
    dx[0] = dir * x[1];
    dx[1] = dir * (-(2.0 * centre / rho - 1.0) * x[1] +
                   (centre / rho - potential) * x[0]);
    for (std::size_t i = 0; i < extras->size(); ++i)
      dx[2 + i] = (*extras)[i](rho, x[0]);
  }
};

// Advances x from rho = from to rho = to, calling record(rho, x) after every
// accepted step. Stops early (returning the rho reached) if |L| overflows.
// The 7(8) pair's embedded estimate vanishes for integrands depending on rho
// alone, which is what the extras become wherever L is nearly constant; the
// step cap keeps the quadrature components resolved regardless.
constexpr double kMaxStep = 0.1;

template <class Record>
std::optional<double> advance(const RadialSystem &sys, State &x, double from,
                              double to, double tol, Record &&record) {
  auto stepper = odeint::make_controlled(tol, tol, kMaxStep,
                                         odeint::runge_kutta_fehlberg78<State>());
  double t = sys.dir * from;
  const double end = sys.dir * to;
  double h = 1e-3;
  while (t < end) {
    if (t + h > end)
      h = end - t;
    if (stepper.try_step(sys, x, t, h) == odeint::fail) {
      if (h < 1e-12)
        throw StepUnderflow("adaptive step collapsed at rho=" +
                            std::to_string(sys.dir * t));
      continue;
    }
    record(sys.dir * t, x);
    if (std::abs(x[0]) > kOverflowLimit)
      return sys.dir * t;
    if (end - t < 1e-12 * std::abs(end))
      break;
  }
  return std::nullopt;
}

void countNodes(RadialSolution &sol) {
  int nodes = 0;
  int last = signOf(sol.L.front());
  for (double v : sol.L) {
    if (v == 0.0)
      continue;
    const int s = signOf(v);
    if (s != last)
      ++nodes;
    last = s;
  }
  sol.nodeCount = nodes;
  sol.tailSign = last;
}

// L'/L on the branch that stays power-like at large rho. With c = ell+1-eps
// and q = nbar rho^{2eps-1} - c/rho the Riccati equation reads
//   (1 - 2c/rho) s = s' + s^2 + q,
// iterated from s = q; each pass gains a power of 1/rho.
double decayingLogDerivative(int ell, double eps, double nbar, double rho,
                             int passes = 4) {
  const double c = ell + 1.0 - eps;
  auto q = [&](double r) { return nbar * std::exp((2.0 * eps - 1.0) * std::log(r)) - c / r; };
  if (passes == 0 || rho < 4.0 * c) // iteration diverges near rho = 2c
    return q(rho);
  const double h = 1e-3 * rho;
  const double s = decayingLogDerivative(ell, eps, nbar, rho, passes - 1);
  const double ds = (decayingLogDerivative(ell, eps, nbar, rho + h, passes - 1) -
                     decayingLogDerivative(ell, eps, nbar, rho - h, passes - 1)) /
                    (2.0 * h);
  return (ds + s * s + q(rho)) / (1.0 - 2.0 * c / rho);
}

void checkRange(double rho0, double rhoMax, double tol) {
  if (!(rho0 > 0.0 && rhoMax > rho0))
    throw InvalidArgument("radial integration needs 0 < rho0 < rhoMax");
  if (!(tol > 0.0))
    throw InvalidArgument("radial integration tolerance must be positive");
}

} // namespace

RadialSolution integrateOutward(int ell, DimensionParam eps, double nbar,
                                double rho0, double rhoMax, double tol,
                                const std::vector<Integrand> &extras,
                                int maxSeriesOrder) {
  checkRange(rho0, rhoMax, tol);
  const auto table =
      buildConvergedTable(ell, eps, nbar, rho0, kSeriesTolerance, maxSeriesOrder);
  const auto start = evaluateSeries(table, nbar, rho0);

  State x(2 + extras.size(), 0.0);
  x[0] = start.value;
  x[1] = start.derivative;

  RadialSolution sol;
  sol.partial.assign(extras.size(), {});
  auto record = [&](double rho, const State &s) {
    sol.grid.push_back(rho);
    sol.L.push_back(s[0]);
    sol.dL.push_back(s[1]);
    for (std::size_t i = 0; i < extras.size(); ++i)
      sol.partial[i].push_back(s[2 + i]);
  };
  record(rho0, x);
  const RadialSystem sys{ell, eps.epsilon, nbar, &extras, 1.0};
  sol.overflowAt = advance(sys, x, rho0, rhoMax, tol, record);
  countNodes(sol);
  return sol;
}

RadialSolution stitchedSolution(int ell, DimensionParam eps, double nbar,
                                double rho0, double rhoMatch, double rhoMax,
                                double tol, const std::vector<Integrand> &extras,
                                int maxSeriesOrder) {
  checkRange(rho0, rhoMax, tol);
  if (!(rhoMatch > rho0 && rhoMatch < rhoMax))
    throw InvalidArgument("stitchedSolution: matching radius outside range");

  RadialSolution sol = integrateOutward(ell, eps, nbar, rho0, rhoMatch, tol,
                                        extras, maxSeriesOrder);
  if (sol.overflowAt)
    throw SolveFailed("outward solution overflowed before the matching radius");
  const double Lout = sol.L.back(), dLout = sol.dL.back();

  const double e = eps.epsilon;
  const double slope = decayingLogDerivative(ell, e, nbar, rhoMax);
  const std::vector<Integrand> none;
  const RadialSystem bare{ell, e, nbar, &none, -1.0};
  State y{1.0, slope};
  advance(bare, y, rhoMax, rhoMatch, tol, [](double, const State &) {});

  // least-squares scale on (value, derivative), robust near a node
  const double scale = (Lout * y[0] + dLout * y[1]) / (y[0] * y[0] + y[1] * y[1]);
  const double logDerivOut = dLout / Lout, logDerivIn = y[1] / y[0];
  sol.matchRadius = rhoMatch;
  sol.matchDefect = std::abs(logDerivOut - logDerivIn) /
                    std::max(1.0, std::abs(logDerivOut));

  const RadialSystem withExtras{ell, e, nbar, &extras, -1.0};
  State z(2 + extras.size(), 0.0);
  z[0] = scale;
  z[1] = scale * slope;
  std::vector<double> grid{rhoMax}, L{z[0]}, dL{z[1]};
  std::vector<std::vector<double>> tailPartial(extras.size(),
                                               std::vector<double>{0.0});
  advance(withExtras, z, rhoMax, rhoMatch, tol, [&](double rho, const State &s) {
    grid.push_back(rho);
    L.push_back(s[0]);
    dL.push_back(s[1]);
    for (std::size_t i = 0; i < extras.size(); ++i)
      tailPartial[i].push_back(s[2 + i]);
  });

  // tailPartial[i][g] = int_{grid[g]}^{rhoMax} f; grid[m] is rhoMatch
  const std::size_t m = grid.size() - 1;
  std::vector<double> outwardAtMatch(extras.size());
  for (std::size_t i = 0; i < extras.size(); ++i)
    outwardAtMatch[i] = sol.partial[i].back();
  for (std::size_t g = m; g-- > 0;) {
    sol.grid.push_back(grid[g]);
    sol.L.push_back(L[g]);
    sol.dL.push_back(dL[g]);
    for (std::size_t i = 0; i < extras.size(); ++i)
      sol.partial[i].push_back(outwardAtMatch[i] + tailPartial[i][m] -
                               tailPartial[i][g]);
  }
  countNodes(sol);
  return sol;
}

NormDetail normalizationDetail(const StateLabel &state, DimensionParam eps,
                               double nbar, const RadialSolution &solution,
                               const SeriesTable &series, double tailTolerance) {
  if (solution.partial.empty())
    throw InvalidArgument("normalizationIntegral: solution lacks the norm integrand");
  const int ell = state.ell;
  const double power = eps.dim - 1.0 + 2.0 * ell;
  const double rho0 = solution.grid.front();
  const double head = squaredSeriesMoment(series, nbar, rho0, power);

  double factor = std::tgamma(state.n + ell + 1.0) /
                  (2.0 * state.n * std::tgamma(state.nr + 1.0));
  const double f2l1 = std::tgamma(2.0 * ell + 2.0);
  factor /= f2l1 * f2l1;

  const double total = head + solution.partial[0].back();
  const double rhoEnd = solution.grid.back();
  // integrand ~ rho^p e^{-rho}: tail <= f(end) / (1 - p/rhoEnd)
  const double p = power + 2.0 * (state.nr + 1.0);
  const double decay = std::max(1.0 - p / rhoEnd, 0.1);
  const double fEnd = normIntegrand(ell, eps)(rhoEnd, solution.L.back());

  NormDetail out;
  out.value = factor * total;
  out.tailBound = fEnd / decay / std::abs(total);
  if (out.tailBound > tailTolerance)
    throw TailNotNegligible("normalization tail " +
                            std::to_string(out.tailBound) + " beyond rho=" +
                            std::to_string(rhoEnd));
  return out;
}

double normalizationIntegral(const StateLabel &state, DimensionParam eps,
                             double nbar, const RadialSolution &solution,
                             const SeriesTable &series, double tailTolerance) {
  return normalizationDetail(state, eps, nbar, solution, series, tailTolerance)
      .value;
}

EigenResult solveNbar(const StateLabel &state, DimensionParam eps, double tol) {
  ShootingOptions options;
  options.nbarTolerance = tol;
  return solveNbar(state, eps, options);
}

EigenResult solveNbar(const StateLabel &state, DimensionParam eps,
                      const ShootingOptions &options) {
  if (!(eps.dim > 2.0 && eps.dim < 4.0))
    throw OutOfRange("solveNbar: D must lie in (2, 4)");
  if (!(options.nbarTolerance >= 1e-12))
    throw InvalidArgument("solveNbar: tolerance must be >= 1e-12");
  const double rho0 = options.rho0;
  const double rhoMax =
      options.rhoMax > 0.0 ? options.rhoMax : defaultRhoMax(state.n);

  auto shoot = [&](double nbar) {
    return integrateOutward(state.ell, eps, nbar, rho0, rhoMax,
                            options.odeTolerance, {}, options.maxSeriesOrder);
  };

  double lo = std::max(0.1, state.n - 1.0);
  double hi = state.n + 1.0;
  if (shoot(lo).nodeCount > state.nr || shoot(hi).nodeCount <= state.nr)
    throw BracketNotFound("no eigenvalue with " + std::to_string(state.nr) +
                          " nodes in (" + std::to_string(lo) + ", " +
                          std::to_string(hi) + ")");

  // node count is monotone in nbar: coarse bracket first
  while (hi - lo > 0.05) {
    const double mid = 0.5 * (lo + hi);
    if (shoot(mid).nodeCount <= state.nr)
      lo = mid;
    else
      hi = mid;
  }

  // The node bracket can end exactly on an eigenvalue (nbar = n at eps = 0
  // is a dyadic point of the bisection); widen it before the sign search.
  lo = std::max(0.5 * lo, lo - 0.01);
  hi += 0.01;
  const auto lower = shoot(lo);
  if (lower.nodeCount != state.nr)
    throw BracketNotFound("bracket lower edge has " +
                          std::to_string(lower.nodeCount) + " nodes, expected " +
                          std::to_string(state.nr));

  // Then the sign of the Wronskian between the regular solution and the
  // solution decaying at rhoMax, taken at rhoMatch. Unlike the sign of L at
  // rhoMax this does not pin L to zero at a finite wall, so nbar does not
  // depend on rhoMax once e^{rhoMatch - rhoMax} is negligible.
  const double rhoMatch = std::min(defaultRhoMatch(state.n), 0.5 * rhoMax);
  auto mismatch = [&](double nbar) {
    const auto out = integrateOutward(state.ell, eps, nbar, rho0, rhoMatch,
                                      options.odeTolerance, {}, options.maxSeriesOrder);
    const double e = eps.epsilon;
    const std::vector<Integrand> none;
    const RadialSystem inward{state.ell, e, nbar, &none, -1.0};
    State y{1.0, decayingLogDerivative(state.ell, e, nbar, rhoMax)};
    advance(inward, y, rhoMax, rhoMatch, options.odeTolerance,
            [](double, const State &) {});
    return signOf(out.L.back() * y[1] - out.dL.back() * y[0]);
  };
  const int lowSign = mismatch(lo);
  if (mismatch(hi) == lowSign)
    throw BracketNotFound("matching Wronskian does not change sign in the node bracket");
  while (hi - lo > options.nbarTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    if (mismatch(mid) == lowSign)
      lo = mid;
    else
      hi = mid;
  }

  const double nbar = 0.5 * (lo + hi);
  auto norm = [&](double nb) {
    const std::vector<Integrand> extras{normIntegrand(state.ell, eps)};
    const auto sol = stitchedSolution(state.ell, eps, nb, rho0,
                                      rhoMatch, rhoMax,
                                      options.odeTolerance, extras,
                                      options.maxSeriesOrder);
    const auto table = buildConvergedTable(state.ell, eps, nb, rho0,
                                           kSeriesTolerance, options.maxSeriesOrder);
    return std::pair{normalizationIntegral(state, eps, nb, sol, table,
                                           options.tailTolerance),
                     sol.nodeCount};
  };
  const auto [iMid, midNodes] = norm(nbar);
  const double iLo = norm(lo).first;
  const double iHi = norm(hi).first;

  EigenResult out;
  out.state = state;
  out.eps = eps;
  out.nbar = nbar;
  out.normIntegral = iMid;
  out.normUncertainty = std::max(std::abs(iLo - iMid), std::abs(iHi - iMid));
  out.bracketWidth = hi - lo;
  out.rhoMax = rhoMax;
  out.nodeCount = lower.nodeCount;
  (void)midNodes;
  return out;
}

PhysicalValues physicalMap(const EigenResult &result,
                           const PhysicalScales &scales) {
  const double e = result.eps.epsilon;
  const double dim = result.eps.dim;
  PhysicalValues out;
  out.gammaBar = 0.5 * std::pow(2.0 * scales.mass * scales.coupling / result.nbar,
                                1.0 / (1.0 + 2.0 * e));
  out.energy = -out.gammaBar * out.gammaBar / (2.0 * scales.mass);
  const double phiSq = std::pow(2.0, dim - 2.0) * std::tgamma(dim / 2.0) *
                       std::pow(out.gammaBar, dim) /
                       (std::pow(std::numbers::pi, dim / 2.0) * result.normIntegral);
  out.phiBar = std::sqrt(phiSq);
  return out;
}

} // namespace hydrod

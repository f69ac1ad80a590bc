#include "hydrod/kappa.hpp"

#include "hydrod/errors.hpp"
#include "hydrod/special_functions.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <algorithm>
#include <cmath>
#include <string>

namespace hydrod {

namespace odeint = boost::numeric::odeint;

double perturbationW(const StateLabel &state, double r) {
  if (!(r > 0.0))
    throw InvalidArgument("perturbationW: r must be positive");
  const double gamma = 1.0 / state.n;
  return -std::log(2.0 * gamma * r) / r;
}

HydrogenRadial hydrogenRadial(const StateLabel &state, double r, double mass,
                              double zAlpha) {
  const int n = state.n, ell = state.ell, nr = state.nr;
  const double gamma = mass * zAlpha / n;
  const double x = 2.0 * gamma * r;
  const double norm =
      std::sqrt(std::pow(2.0 * gamma, 3) * std::tgamma(nr + 1.0) /
                (2.0 * n * std::tgamma(n + ell + 1.0)));
  const double alpha = 2.0 * ell + 1.0;
  const double poly = laguerre(nr, alpha, x);
  const double dpoly = nr > 0 ? -laguerre(nr - 1, alpha + 1.0, x) : 0.0;
  // u = norm / (2 gamma) * x^{ell+1} e^{-x/2} P(x)
  const double base = norm / (2.0 * gamma) * std::pow(x, ell + 1) * std::exp(-0.5 * x);
  HydrogenRadial out;
  out.u = base * poly;
  const double dudx = base * ((ell + 1) / x * poly - 0.5 * poly + dpoly);
  out.du = dudx * 2.0 * gamma;
  return out;
}

namespace {

constexpr std::size_t kComponents = 9;
using State = std::array<double, kComponents>;

struct PassResult {
  State x{};
  double maxSource = 0.0;
  double maxResidual = 0.0;
};

} // namespace

KappaResult dalgarnoLewisSolve(const StateLabel &state,
                               const KappaOptions &options) {
  const double m = options.mass, za = options.zAlpha;
  if (!(m > 0.0 && za > 0.0 && options.tolerance > 0.0))
    throw InvalidArgument("dalgarnoLewisSolve: invalid options");
  const int ell = state.ell;
  const double gamma = m * za / state.n;
  const double energy = -gamma * gamma / (2.0 * m);
  const double bohr = 1.0 / (m * za);
  const double outer =
      (options.outerRadius > 0.0 ? options.outerRadius : 60.0 * state.n) * bohr;
  const double inner = 1e-6 * bohr;
  const double checkRadius = 20.0 * state.n * bohr;

  auto W = [&](double r) { return -za * std::log(2.0 * gamma * r) / r; };
  auto f1 = [&](double r) { return hydrogenRadial(state, r, m, za); };

  boost::math::quadrature::tanh_sinh<double> quad;
  const double meanW = quad.integrate(
      [&](double r) {
        const double u = f1(r).u;
        return u * u * W(r);
      },
      0.0, outer, options.tolerance);
  auto source = [&](double r, double u) { return (W(r) - meanW) * u; };

  // f2 starts where |f1| peaks: integrating it inward (towards the r^{-ell}
  // branch) and outward (towards the growing branch) are then both stable.
  double split = inner, peak = 0.0;
  for (double r = 0.01 * bohr; r < 4.0 * state.n * state.n * bohr; r += 0.01 * bohr) {
    const double u = std::abs(f1(r).u);
    if (u > peak) {
      peak = u;
      split = r;
    }
  }
  const double wronskian = f1(split).u;

  const double q0 = ell * (ell + 1.0);
  auto q = [&](double r) {
    return q0 / (r * r) - 2.0 * m * za / r - 2.0 * m * energy;
  };

  // Components: f2, f2', then five running integrals and two nested ones.
  // Outward pass (from split, in r):
  //   P=int f2 S, K=int f1 S P, C=int f1 S, N=int f1^2, Q=int f1 f2,
  //   M1=int f1^2 P, M2=int f1 S Q.
  // Inward pass (in tau = split - r), integrals taken over [r, split]:
  //   Pi, A1=int f1 S Pi, Ci, Ni, Qi, A2=int f1^2 Pi, A3=int f1 S Qi.
  auto pass = [&](double from, double to, State x) {
    const double dir = to > from ? 1.0 : -1.0;
    auto rhs = [&](const State &y, State &dy, double tau) {
      const double r = from + dir * tau;
      const double u = f1(r).u;
      const double S = source(r, u);
      dy[0] = dir * y[1];
      dy[1] = dir * q(r) * y[0];
      dy[2] = y[0] * S;
      dy[3] = u * S * y[2];
      dy[4] = u * S;
      dy[5] = u * u;
      dy[6] = u * y[0];
      dy[7] = u * u * y[2];
      dy[8] = u * S * y[6];
    };
    auto stepper = odeint::make_controlled(
        1e-3 * options.tolerance, options.tolerance, 0.1 * bohr,
        odeint::runge_kutta_fehlberg78<State>());
    const double length = std::abs(to - from);
    double tau = 0.0, h = 1e-3 * bohr;
    PassResult out;
    while (tau < length) {
      if (tau + h > length)
        h = length - tau;
      if (stepper.try_step(rhs, x, tau, h) == odeint::fail) {
        if (h < 1e-14 * bohr)
          throw SolveFailed("Dalgarno-Lewis integration step collapsed");
        continue;
      }
      const double r = from + dir * tau;
      if (r <= checkRadius) {
        const auto f = f1(r);
        const double S = std::abs(2.0 * m * source(r, f.u));
        const double w = f.u * x[1] - f.du * x[0];
        out.maxSource = std::max(out.maxSource, S);
        out.maxResidual =
            std::max(out.maxResidual, S * std::abs(w / wronskian - 1.0));
      }
      if (length - tau < 1e-12 * length)
        break;
    }
    out.x = x;
    return out;
  };

  State seed{};
  seed[1] = 1.0;
  const PassResult in = pass(split, inner, seed);
  const double Pi = in.x[2], Ci = in.x[4], Ni = in.x[5], Qi = in.x[6];

  State outSeed{};
  outSeed[1] = 1.0;
  outSeed[2] = Pi;
  outSeed[3] = Pi * Ci - in.x[3];
  outSeed[4] = Ci;
  outSeed[5] = Ni;
  outSeed[6] = Qi;
  outSeed[7] = Pi * Ni - in.x[7];
  outSeed[8] = Qi * Ci - in.x[8];
  const PassResult outPass = pass(split, outer, outSeed);
  const State &x = outPass.x;

  // y = -(2m/w) [f1 P + f2 (C_tot - C)], then projected orthogonal to f1
  const double overlap = -(2.0 * m / wronskian) * (x[7] + x[8]);
  const double selfOverlap = x[5];
  const double solvability = x[4];
  const double pairing = -(4.0 * m / wronskian) * x[3] - overlap * solvability;

  KappaResult out;
  out.state = state;
  out.meanW = meanW;
  out.kappa = pairing / energy;
  out.orthogonalityDefect = std::abs(overlap * (1.0 - selfOverlap));
  const double maxSource = std::max(in.maxSource, outPass.maxSource);
  out.residualNorm =
      maxSource > 0.0 ? std::max(in.maxResidual, outPass.maxResidual) / maxSource
                      : 0.0;

  double scale = 0.0;
  for (double r = inner; r < outer; r += 0.05 * bohr)
    scale += std::abs(source(r, f1(r).u) * f1(r).u) * 0.05 * bohr;
  if (std::abs(solvability) > 1e3 * options.tolerance * scale)
    throw SolveFailed("source not orthogonal to the bound state: " +
                      std::to_string(solvability));
  if (out.residualNorm > 1e-8)
    throw SolveFailed("Dalgarno-Lewis residual " +
                      std::to_string(out.residualNorm) + " above 1e-8");
  return out;
}

KappaResult dalgarnoLewisSolve(const StateLabel &state, double tolerance) {
  KappaOptions options;
  options.tolerance = tolerance;
  return dalgarnoLewisSolve(state, options);
}

} // namespace hydrod

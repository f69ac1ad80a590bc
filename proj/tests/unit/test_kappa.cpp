#include "catch_amalgamated.hpp"

#include "hydrod/errors.hpp"
#include "hydrod/kappa.hpp"
#include "hydrod/special_functions.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

using namespace hydrod;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const StateLabel kStates[] = {{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1},
                              {3, 2}, {4, 0}, {4, 1}, {4, 2}, {4, 3}};
const double kEulerGamma = 0.57721566490153286;

} // namespace

TEST_CASE("perturbationW") {
  CHECK(perturbationW(StateLabel(1, 0), 0.5) == 0.0);
  CHECK_THAT(perturbationW(StateLabel(1, 0), 1.0), WithinAbs(-std::log(2.0), 1e-15));
  CHECK(perturbationW(StateLabel(2, 1), 1.0) == 0.0);
}

TEST_CASE("hydrogenRadial: closed forms, normalisation and derivative") {
  for (double r : {0.1, 1.0, 3.0}) {
    CHECK_THAT(hydrogenRadial(StateLabel(1, 0), r).u, WithinRel(2 * r * std::exp(-r), 1e-14));
    CHECK_THAT(hydrogenRadial(StateLabel(2, 1), r).u,
               WithinRel(r * r * std::exp(-r / 2) / (2 * std::sqrt(6.0)), 1e-14));
  }
  boost::math::quadrature::tanh_sinh<double> quad;
  for (const auto &s : kStates) {
    for (double m : {1.0, 2.0}) {
      const double norm = quad.integrate(
          [&](double r) {
            const double u = hydrogenRadial(s, r, m, 0.7).u;
            return u * u;
          },
          0.0, 200.0 * s.n);
      CHECK_THAT(norm, WithinAbs(1.0, 1e-12));
    }
    const double r = 1.7, h = 1e-5;
    const double fd = (hydrogenRadial(s, r + h).u - hydrogenRadial(s, r - h).u) / (2 * h);
    CHECK_THAT(hydrogenRadial(s, r).du, WithinAbs(fd, 1e-9));
  }
}

TEST_CASE("dalgarnoLewisSolve: examples") {
  CHECK_THAT(dalgarnoLewisSolve(StateLabel(1, 0)).kappa, WithinAbs(0.447424, 5e-6));
  CHECK_THAT(dalgarnoLewisSolve(StateLabel(3, 0)).kappa, WithinAbs(-0.039708, 5e-6));
  CHECK_THAT(dalgarnoLewisSolve(StateLabel(4, 3)).kappa, WithinAbs(1.062267, 5e-6));
}

TEST_CASE("dalgarnoLewisSolve: diagnostics and first moment") {
  for (const auto &s : kStates) {
    const auto k = dalgarnoLewisSolve(s);
    const double energy = -0.5 / (s.n * s.n);
    INFO("n=" << s.n << " l=" << s.ell);
    CHECK(k.orthogonalityDefect < 1e-9);
    CHECK(k.residualNorm < 1e-8);
    CHECK_THAT(k.meanW, WithinAbs(2 * energy * (harmonicNumber(s.n + s.ell) - kEulerGamma), 1e-9));
  }
}

TEST_CASE("dalgarnoLewisSolve: independent of units and outer radius") {
  for (const auto &s : {StateLabel(1, 0), StateLabel(3, 1), StateLabel(4, 2)}) {
    const double ref = dalgarnoLewisSolve(s).kappa;
    KappaOptions heavy;
    heavy.mass = 2.0;
    CHECK_THAT(dalgarnoLewisSolve(s, heavy).kappa, WithinAbs(ref, 1e-9));
    KappaOptions weak;
    weak.zAlpha = 0.5;
    CHECK_THAT(dalgarnoLewisSolve(s, weak).kappa, WithinAbs(ref, 1e-9));
    KappaOptions far;
    far.outerRadius = 80.0 * s.n;
    CHECK_THAT(dalgarnoLewisSolve(s, far).kappa, WithinAbs(ref, 1e-9));
  }
}

TEST_CASE("dalgarnoLewisSolve: invalid options") {
  KappaOptions bad;
  bad.mass = -1.0;
  CHECK_THROWS_AS(dalgarnoLewisSolve(StateLabel(1, 0), bad), InvalidArgument);
  CHECK_THROWS_AS(dalgarnoLewisSolve(StateLabel(1, 0), 0.0), InvalidArgument);
}

#include "catch_amalgamated.hpp"

#include "hydrod/errors.hpp"
#include "hydrod/perturbation.hpp"
#include "hydrod/radial_solver.hpp"
#include "hydrod/report.hpp"

#include <cmath>
#include <numbers>

using namespace hydrod;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const StateLabel kStates[] = {{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1},
                              {3, 2}, {4, 0}, {4, 1}, {4, 2}, {4, 3}};

} // namespace

TEST_CASE("StateLabel") {
  const StateLabel s(4, 1);
  CHECK(s.nr == 2);
  CHECK_THROWS_AS(StateLabel(2, 2), InvalidArgument);
  CHECK_THROWS_AS(StateLabel(0, 0), InvalidArgument);
}

TEST_CASE("integrateOutward: 1S at eps = 0 is constant") {
  const auto sol = integrateOutward(0, DimensionParam::fromEpsilon(0.0), 1.0, 0.1, 40.0, 1e-13);
  CHECK(sol.nodeCount == 0);
  CHECK(sol.grid.front() == 0.1);
  CHECK_FALSE(sol.overflowAt);
  // rounding errors grow like e^rho along the divergent branch
  double nearWorst = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < sol.L.size(); ++i) {
    worst = std::max(worst, std::abs(sol.L[i] - 1.0));
    if (sol.grid[i] <= 15.0)
      nearWorst = worst;
  }
  CHECK(nearWorst < 1e-8);
  CHECK(worst < 1e-2);
}

TEST_CASE("integrateOutward: 3S at eps = 0 has two nodes") {
  const auto sol = integrateOutward(0, DimensionParam::fromEpsilon(0.0), 3.0, 0.1, 20.0, 1e-13);
  CHECK(sol.nodeCount == 2);
}

TEST_CASE("integrateOutward: initial data match the series") {
  const auto d = DimensionParam::fromEpsilon(0.03);
  const double nbar = 1.7, rho0 = 0.2;
  const auto sol = integrateOutward(1, d, nbar, rho0, 10.0, 1e-13);
  const auto v = evaluateSeries(buildConvergedTable(1, d, nbar, rho0), nbar, rho0);
  CHECK_THAT(sol.L.front(), WithinRel(v.value, 1e-12));
  CHECK_THAT(sol.dL.front(), WithinRel(v.derivative, 1e-12));
  int changes = 0;
  for (std::size_t i = 1; i < sol.L.size(); ++i)
    changes += (sol.L[i - 1] > 0) != (sol.L[i] > 0);
  CHECK(changes == sol.nodeCount);
}

TEST_CASE("integrateOutward: tail sign brackets the ground state") {
  const auto d = DimensionParam::fromEpsilon(0.001);
  const auto lo = integrateOutward(0, d, 0.9, 0.1, 60.0, 1e-13);
  const auto hi = integrateOutward(0, d, 1.1, 0.1, 60.0, 1e-13);
  CHECK(lo.tailSign == -hi.tailSign);
}

TEST_CASE("solveNbar: examples") {
  const auto r10 = solveNbar(StateLabel(1, 0), DimensionParam::fromEpsilon(0.001));
  CHECK_THAT(r10.nbar, WithinAbs(0.998154698, 1e-9));
  CHECK_THAT(r10.normIntegral, WithinAbs(1.006747, 2e-6));
  CHECK(r10.bracketWidth <= 1e-12);

  const auto r43 = solveNbar(StateLabel(4, 3), DimensionParam::fromEpsilon(0.001));
  CHECK_THAT(r43.nbar, WithinAbs(3.982904201, 2e-8));
  CHECK_THAT(r43.normIntegral, WithinAbs(1.024302, 2e-6));

  const auto r21 = solveNbar(StateLabel(2, 1), DimensionParam::fromEpsilon(0.0));
  CHECK_THAT(r21.nbar, WithinAbs(2.0, 1e-10));
  CHECK_THAT(r21.normIntegral, WithinAbs(1.0, 1e-8));

  CHECK_THROWS_AS(solveNbar(StateLabel(1, 0), DimensionParam::fromEpsilon(0.0), 1e-13),
                  InvalidArgument);
}

TEST_CASE("solveNbar: three dimensions for every state") {
  for (const auto &s : kStates) {
    const auto r = solveNbar(s, DimensionParam::fromEpsilon(0.0));
    INFO("n=" << s.n << " l=" << s.ell);
    CHECK(std::abs(r.nbar - s.n) < 1e-10);
    CHECK(std::abs(r.normIntegral - 1.0) < 1e-8);
  }
}

TEST_CASE("solveNbar: continuity at eps = 1e-8") {
  // The first-order shifts n xi1 eps and I1 eps are themselves ~1e-7 here.
  const double eps = 1e-8;
  for (const auto &s : kStates) {
    const auto r = solveNbar(s, DimensionParam::fromEpsilon(eps));
    INFO("n=" << s.n << " l=" << s.ell);
    CHECK(std::abs(r.nbar - s.n * (1 + xi1(s) * eps)) < 1e-9);
    CHECK(std::abs(r.normIntegral - (1 + iOrder1(s) * eps)) < 1e-7);
  }
}

TEST_CASE("solveNbar: node count equals the radial quantum number") {
  for (double eps : {0.0, 0.05, -0.05, 0.001})
    for (const auto &s : kStates) {
      const auto r = solveNbar(s, DimensionParam::fromEpsilon(eps));
      INFO("n=" << s.n << " l=" << s.ell << " eps=" << eps);
      CHECK(r.nodeCount == s.nr);
      const auto sol = stitchedSolution(s.ell, r.eps, r.nbar, 0.1, defaultRhoMatch(s.n),
                                        r.rhoMax, 1e-13);
      CHECK(sol.nodeCount == s.nr);
    }
}

TEST_CASE("solveNbar: independent of matching and outer radius") {
  const StateLabel s(2, 0);
  const auto d = DimensionParam::fromEpsilon(0.01);
  const double ref = solveNbar(s, d).nbar;
  for (double rho0 : {0.02, 0.1, 0.5})
    for (double rhoMax : {30.0, 50.0, 80.0}) {
      ShootingOptions o;
      o.rho0 = rho0;
      o.rhoMax = rhoMax;
      o.tailTolerance = 1e-6; // only nbar is compared; rho = 30 truncates I at ~1e-8
      INFO("rho0=" << rho0 << " rhoMax=" << rhoMax);
      CHECK(std::abs(solveNbar(s, d, o).nbar - ref) < 1e-10);
    }
}

TEST_CASE("solveNbar: scale-invariant outputs do not depend on mu") {
  RunConfig a;
  a.n = 3;
  a.ell = 1;
  a.epsilon = 0.02;
  RunConfig b = a;
  b.mu = 17.0;
  RunConfig c = a;
  c.mu = 0.01;
  const auto ra = runSolve(a), rb = runSolve(b), rc = runSolve(c);
  for (const char *name : {"nbar", "I"}) {
    std::size_t col = 0;
    while (ra.columns[col].name != name)
      ++col;
    CHECK(ra.rows[0][col] == rb.rows[0][col]);
    CHECK(ra.rows[0][col] == rc.rows[0][col]);
  }
  const auto r = solveNbar(StateLabel(3, 1), DimensionParam::fromEpsilon(0.02));
  const auto pa = physicalMap(r, PhysicalScales::fromMu(1, 1, 0.5, r.eps));
  const auto pb = physicalMap(r, PhysicalScales::fromMu(1, 1, 5.0, r.eps));
  CHECK(pa.gammaBar != pb.gammaBar);
}

TEST_CASE("solveNbar: approach to the perturbative series") {
  // Reference second-order coefficients, xi^[2] for the ten states.
  const double xi2[] = {0.264439, -0.621005, 2.859042, -0.228670, 2.811021,
                        5.240299, 0.533015,  3.210384, 5.435611,  7.338238};
  int i = 0;
  for (const auto &s : kStates) {
    const double x2 = xi2[i++];
    std::vector<double> c;
    for (double eps : {0.004, 0.002, 0.001, 0.0005}) {
      const auto r = solveNbar(s, DimensionParam::fromEpsilon(eps));
      const double pert = s.n * (1.0 + xi1(s) * eps + x2 * eps * eps);
      c.push_back((r.nbar - pert) / (eps * eps * eps));
    }
    INFO("n=" << s.n << " l=" << s.ell << " c=" << c[0] << "," << c[1] << "," << c[2] << ","
              << c[3]);
    for (std::size_t k = 1; k < c.size(); ++k)
      CHECK(std::abs(c[k] / c[k - 1] - 1.0) < 0.25);
  }
}

TEST_CASE("normalizationIntegral and tails") {
  const StateLabel s(1, 0);
  const auto d = DimensionParam::fromEpsilon(0.0);
  const auto sol = stitchedSolution(0, d, 1.0, 0.1, 1.0, 60.0, 1e-13, {normIntegrand(0, d)});
  const auto series = buildConvergedTable(0, d, 1.0, 0.1);
  const auto detail = normalizationDetail(s, d, 1.0, sol, series);
  CHECK_THAT(detail.value, WithinAbs(1.0, 1e-10));
  CHECK(detail.tailBound < 1e-12);
  const auto shortSol = stitchedSolution(0, d, 1.0, 0.1, 1.0, 8.0, 1e-13, {normIntegrand(0, d)});
  CHECK_THROWS_AS(normalizationIntegral(s, d, 1.0, shortSol, series), TailNotNegligible);
}

TEST_CASE("PhysicalScales and physicalMap") {
  const auto d = DimensionParam::fromEpsilon(0.1);
  const auto sc = PhysicalScales::fromMu(1.0, 1.0, 3.0, d);
  const double eg = 0.57721566490153286;
  CHECK_THAT(sc.muBar * sc.muBar, WithinRel(9.0 * std::exp(eg) / (4.0 * std::numbers::pi), 1e-14));
  CHECK(sc.coupling > 0.0);

  CHECK_THAT(andrewSuppleeCoupling(DimensionParam::fromDimension(3.0)).coupling, WithinRel(1.0, 1e-14));
  CHECK_THAT(andrewSuppleeCoupling(DimensionParam::fromDimension(2.4)).coupling, WithinRel(2.5, 1e-14));
  CHECK_THAT(andrewSuppleeCoupling(DimensionParam::fromDimension(3.8)).coupling,
             WithinRel(1.0 / 1.8, 1e-14));

  for (int n = 1; n <= 3; ++n) {
    EigenResult r;
    r.state = StateLabel(n, 0);
    r.eps = DimensionParam::fromEpsilon(0.0);
    r.nbar = n;
    r.normIntegral = 1.0;
    const auto p = physicalMap(r, PhysicalScales::fromMu(1.0, 1.0, 1.0, r.eps));
    CHECK_THAT(p.gammaBar, WithinRel(1.0 / n, 1e-14));
    CHECK_THAT(p.energy, WithinRel(-0.5 / (n * n), 1e-14));
  }

  const auto d3 = DimensionParam::fromDimension(3.0);
  const auto e3 = physicalMap(solveNbar(StateLabel(1, 0), d3), andrewSuppleeCoupling(d3)).energy;
  CHECK_THAT(e3, WithinAbs(-0.5, 1e-9));
}

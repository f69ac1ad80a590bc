#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hydrod/errors.hpp"
#include "hydrod/expectation.hpp"
#include "hydrod/extrapolation.hpp"
#include "hydrod/kappa.hpp"
#include "hydrod/perturbation.hpp"
#include "hydrod/radial_solver.hpp"
#include "hydrod/report.hpp"
#include "hydrod/series.hpp"
#include "hydrod/special_functions.hpp"

namespace py = pybind11;
using namespace hydrod;

namespace {

RunConfig configFromDict(const std::string &command, const py::dict &opts) {
  RunConfig c;
  c.command = parseCommand(command);
  for (const auto &[key, value] : opts) {
    const auto k = py::cast<std::string>(key);
    if (k == "n") c.n = py::cast<int>(value);
    else if (k == "l") c.ell = py::cast<int>(value);
    else if (k == "epsilon") c.epsilon = py::cast<double>(value);
    else if (k == "mu") c.mu = py::cast<double>(value);
    else if (k == "tol") c.tol = py::cast<double>(value);
    else if (k == "rho_max") c.rhoMax = py::cast<double>(value);
    else if (k == "max_order") c.maxOrder = py::cast<int>(value);
    else if (k == "eps_grid") c.epsGrid = py::cast<std::vector<double>>(value);
    else throw InvalidArgument("unknown option '" + k + "'");
  }
  return c;
}

} // namespace

PYBIND11_MODULE(_hydrod, m) {
  m.doc() = "Hydrogen bound states in D = 3 - 2 eps dimensions";

  static py::exception<Error> base(m, "HydrodError", PyExc_RuntimeError);
  static py::exception<InvalidArgument> invalid(m, "InvalidArgument", base.ptr());
  static py::exception<OutOfRange> outOfRange(m, "OutOfRange", base.ptr());
  static py::exception<BracketNotFound> bracket(m, "BracketNotFound", base.ptr());
  static py::exception<SolveFailed> solveFailed(m, "SolveFailed", base.ptr());
  static py::exception<IllConditioned> ill(m, "IllConditioned", base.ptr());
  static py::exception<ZeroEpsilon> zeroEps(m, "ZeroEpsilon", base.ptr());
  static py::exception<SplitMismatch> split(m, "SplitMismatch", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const InvalidArgument &e) {
      invalid(e.what());
    } catch (const OutOfRange &e) {
      outOfRange(e.what());
    } catch (const BracketNotFound &e) {
      bracket(e.what());
    } catch (const SolveFailed &e) {
      solveFailed(e.what());
    } catch (const IllConditioned &e) {
      ill(e.what());
    } catch (const ZeroEpsilon &e) {
      zeroEps(e.what());
    } catch (const SplitMismatch &e) {
      split(e.what());
    } catch (const Error &e) {
      base((std::string(e.name()) + ": " + e.what()).c_str());
    }
  });

  py::class_<StateLabel>(m, "StateLabel")
      .def(py::init<int, int>(), py::arg("n"), py::arg("l"))
      .def_readonly("n", &StateLabel::n)
      .def_readonly("l", &StateLabel::ell)
      .def_readonly("nr", &StateLabel::nr)
      .def("__repr__", [](const StateLabel &s) {
        return "StateLabel(n=" + std::to_string(s.n) + ", l=" + std::to_string(s.ell) + ")";
      });

  py::class_<DimensionParam>(m, "DimensionParam")
      .def_static("from_epsilon", &DimensionParam::fromEpsilon)
      .def_static("from_dimension", &DimensionParam::fromDimension)
      .def_readonly("epsilon", &DimensionParam::epsilon)
      .def_readonly("dim", &DimensionParam::dim);

  py::class_<PhysicalScales>(m, "PhysicalScales")
      .def_static("from_mu", &PhysicalScales::fromMu, py::arg("mass"),
                  py::arg("z_alpha"), py::arg("mu"), py::arg("eps"))
      .def_readonly("mass", &PhysicalScales::mass)
      .def_readonly("z_alpha", &PhysicalScales::zAlpha)
      .def_readonly("mu", &PhysicalScales::mu)
      .def_readonly("mu_bar", &PhysicalScales::muBar)
      .def_readonly("coupling", &PhysicalScales::coupling);
  m.def("andrew_supplee_scales", &andrewSuppleeCoupling, py::arg("eps"));

  py::class_<EigenResult>(m, "EigenResult")
      .def_readonly("state", &EigenResult::state)
      .def_readonly("eps", &EigenResult::eps)
      .def_readonly("nbar", &EigenResult::nbar)
      .def_readonly("norm_integral", &EigenResult::normIntegral)
      .def_readonly("norm_uncertainty", &EigenResult::normUncertainty)
      .def_readonly("bracket_width", &EigenResult::bracketWidth)
      .def_readonly("rho_max", &EigenResult::rhoMax)
      .def_readonly("node_count", &EigenResult::nodeCount);

  py::class_<PhysicalValues>(m, "PhysicalValues")
      .def_readonly("gamma_bar", &PhysicalValues::gammaBar)
      .def_readonly("energy", &PhysicalValues::energy)
      .def_readonly("phi_bar", &PhysicalValues::phiBar);

  m.def(
      "solve_nbar",
      [](int n, int l, double epsilon, double tol) {
        return solveNbar(StateLabel(n, l), DimensionParam::fromEpsilon(epsilon), tol);
      },
      py::arg("n"), py::arg("l"), py::arg("epsilon"), py::arg("tol") = 1e-12,
      py::call_guard<py::gil_scoped_release>());
  m.def("physical_map", &physicalMap, py::arg("result"), py::arg("scales"));

  py::class_<KappaResult>(m, "KappaResult")
      .def_readonly("state", &KappaResult::state)
      .def_readonly("kappa", &KappaResult::kappa)
      .def_readonly("mean_w", &KappaResult::meanW)
      .def_readonly("orthogonality_defect", &KappaResult::orthogonalityDefect)
      .def_readonly("residual_norm", &KappaResult::residualNorm);
  m.def(
      "kappa",
      [](int n, int l, double tol) { return dalgarnoLewisSolve(StateLabel(n, l), tol); },
      py::arg("n"), py::arg("l"), py::arg("tol") = 1e-11,
      py::call_guard<py::gil_scoped_release>());

  m.def("xi1", [](int n, int l) { return xi1(StateLabel(n, l)); }, py::arg("n"), py::arg("l"));
  m.def("i_order1", [](int n, int l) { return iOrder1(StateLabel(n, l)); },
        py::arg("n"), py::arg("l"));
  m.def("phi_order1", [](int n, int l, const PhysicalScales &s) {
        return phiOrder1(StateLabel(n, l), s);
      }, py::arg("n"), py::arg("l"), py::arg("scales"));
  m.def("ground_state_xi2", &groundStateXi2, py::arg("kappa10"));

  py::class_<CoefficientEstimate>(m, "CoefficientEstimate")
      .def_readonly("value", &CoefficientEstimate::value)
      .def_readonly("uncertainty", &CoefficientEstimate::uncertainty)
      .def_readonly("fit_order", &CoefficientEstimate::fitOrder)
      .def_readonly("eps_grid", &CoefficientEstimate::epsGrid);
  m.def(
      "estimate_xi",
      [](int n, int l, const std::vector<double> &grid) {
        const auto r = estimateXiCoefficients(StateLabel(n, l), grid);
        return std::pair{r.xi2, r.xi3};
      },
      py::arg("n"), py::arg("l"), py::arg("eps_grid") = defaultEpsGrid(),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "estimate_i2",
      [](int n, int l, const std::vector<double> &grid) {
        return estimateI2(StateLabel(n, l), grid);
      },
      py::arg("n"), py::arg("l"), py::arg("eps_grid") = defaultEpsGrid(),
      py::call_guard<py::gil_scoped_release>());

  py::class_<VprimeSqResult>(m, "VprimeSqResult")
      .def_readonly("eps", &VprimeSqResult::eps)
      .def_readonly("pole_part", &VprimeSqResult::polePart)
      .def_readonly("finite_part", &VprimeSqResult::finitePart)
      .def_readonly("prefactor", &VprimeSqResult::prefactor)
      .def_readonly("braces", &VprimeSqResult::braces);
  m.def(
      "vprime_sq_numeric",
      [](int n, double eps) {
        const StateLabel s(n, 0);
        return vprimeSqNumeric(s, eps, unitScalesAtZeroLog(s, eps));
      },
      py::arg("n"), py::arg("epsilon"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "vprime_sq_closed_form",
      [](int n, int l, double eps, double phiBarSq) {
        const StateLabel s(n, l);
        return vprimeSqClosedForm(s, eps, unitScalesAtZeroLog(s, eps), phiBarSq);
      },
      py::arg("n"), py::arg("l"), py::arg("epsilon"), py::arg("phi_bar_sq") = 1.0);

  m.def("harmonic", [](int n) {
    const auto h = harmonic(n);
    return std::pair{h.h1, h.h2};
  }, py::arg("n"));
  m.def("diharmonic", [](bool plus, int n, int mm) {
    return diharmonic(plus ? Sign::Plus : Sign::Minus, n, mm);
  }, py::arg("plus"), py::arg("n"), py::arg("m"));
  m.def("laguerre", &laguerre, py::arg("n"), py::arg("alpha"), py::arg("x"));
  m.def("sphere_area", &sphereArea, py::arg("d"));

  m.def(
      "run_json",
      [](const std::string &command, const py::dict &options) {
        const RunConfig config = configFromDict(command, options);
        py::gil_scoped_release release;
        return toJson(run(config)).dump();
      },
      py::arg("command"), py::arg("options") = py::dict());
}

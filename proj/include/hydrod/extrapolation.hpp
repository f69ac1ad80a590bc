#pragma once

#include "hydrod/radial_solver.hpp"

#include <utility>
#include <vector>

namespace hydrod {

// Estimates of higher epsilon-series coefficients from the difference between
// eigen-solver output and the truncated analytic series over a small-eps grid.

struct EpsSample {
  double eps = 0.0;
  double nbarDE = 0.0;
  double iDE = 0.0;
  double nbarNoise = 0.0;
  double iNoise = 0.0;
};

struct EpsPoint {
  double eps = 0.0;
  double y = 0.0;
};

struct CoefficientEstimate {
  double value = 0.0;
  double uncertainty = 0.0;
  int fitOrder = 1; // number of subleading terms in the fit
  std::vector<double> epsGrid;
};

struct FitOptions {
  int fitOrder = 1;
  double noise = 0.0;                    // absolute noise on y
  std::vector<double> knownUncertainty;  // same length as knownCoeffs, or empty
};

const std::vector<double> &defaultEpsGrid();

/// Fits r(eps) = (y - sum_k known[k] eps^k) / eps^target to c0 + c1 eps + ...
/// and returns c0. Throws IllConditioned when the grid spans less than a
/// factor 4, when the fit residual exceeds the estimate, or when the noise
/// propagated into r is within a factor 10 of the estimate.
CoefficientEstimate estimateNextCoefficient(const std::vector<EpsPoint> &points,
                                            const std::vector<double> &knownCoeffs,
                                            int targetOrder,
                                            const FitOptions &options = {});

/// Converged eigen-solves over the grid (run concurrently), in grid order.
std::vector<EpsSample> sampleGrid(const StateLabel &state,
                                  const std::vector<double> &epsGrid,
                                  const ShootingOptions &options = {});

struct XiEstimates {
  CoefficientEstimate xi2;
  CoefficientEstimate xi3;
};

/// xi^[3] uses the analytic xi^[2] for the ground state (from kappa_10) and the
/// fitted one otherwise.
XiEstimates estimateXiCoefficients(const StateLabel &state,
                                   const std::vector<double> &epsGrid = defaultEpsGrid());
XiEstimates estimateXiCoefficients(const StateLabel &state,
                                   const std::vector<EpsSample> &samples);

CoefficientEstimate estimateI2(const StateLabel &state,
                               const std::vector<double> &epsGrid = defaultEpsGrid());
CoefficientEstimate estimateI2(const StateLabel &state,
                               const std::vector<EpsSample> &samples);

} // namespace hydrod

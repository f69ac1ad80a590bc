#include "hydrod/extrapolation.hpp"

#include "hydrod/errors.hpp"
#include "hydrod/kappa.hpp"
#include "hydrod/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

namespace hydrod {

namespace {

// Least-squares polynomial fit in eps, returning all coefficients.
std::vector<double> polyFit(const std::vector<double> &x,
                            const std::vector<double> &y, int degree) {
  const std::size_t p = degree + 1;
  // normal equations in a scaled variable to keep them well conditioned
  const double scale = *std::max_element(x.begin(), x.end());
  std::vector<double> a(p * p, 0.0), b(p, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> pw(p, 1.0);
    for (std::size_t k = 1; k < p; ++k)
      pw[k] = pw[k - 1] * x[i] / scale;
    for (std::size_t r = 0; r < p; ++r) {
      b[r] += pw[r] * y[i];
      for (std::size_t c = 0; c < p; ++c)
        a[r * p + c] += pw[r] * pw[c];
    }
  }
  // Gaussian elimination with partial pivoting
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < p; ++r)
      if (std::abs(a[r * p + col]) > std::abs(a[piv * p + col]))
        piv = r;
    if (std::abs(a[piv * p + col]) < 1e-300)
      throw IllConditioned("singular least-squares system");
    if (piv != col) {
      for (std::size_t c = 0; c < p; ++c)
        std::swap(a[col * p + c], a[piv * p + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < p; ++r) {
      const double f = a[r * p + col] / a[col * p + col];
      for (std::size_t c = col; c < p; ++c)
        a[r * p + c] -= f * a[col * p + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> coef(p);
  for (std::size_t r = p; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < p; ++c)
      s -= a[r * p + c] * coef[c];
    coef[r] = s / a[r * p + r];
  }
  double f = 1.0;
  for (std::size_t k = 0; k < p; ++k) {
    coef[k] /= f;
    f *= scale;
  }
  return coef;
}

double evalPoly(const std::vector<double> &c, double x) {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;)
    s = s * x + c[k];
  return s;
}

} // namespace

const std::vector<double> &defaultEpsGrid() {
  static const std::vector<double> grid{0.0005, 0.001, 0.002, 0.003, 0.004};
  return grid;
}

CoefficientEstimate estimateNextCoefficient(const std::vector<EpsPoint> &points,
                                            const std::vector<double> &knownCoeffs,
                                            int targetOrder,
                                            const FitOptions &options) {
  if (targetOrder < 1 || static_cast<int>(knownCoeffs.size()) != targetOrder)
    throw InvalidArgument("knownCoeffs must hold exactly the terms below targetOrder");
  if (options.fitOrder < 0)
    throw InvalidArgument("fitOrder must be nonnegative");
  const std::size_t needed = std::max<std::size_t>(4, options.fitOrder + 2);
  if (points.size() < needed)
    throw InvalidArgument("need at least " + std::to_string(needed) + " samples");

  std::vector<double> eps, r;
  for (const auto &pt : points) {
    if (!(pt.eps > 0.0))
      throw InvalidArgument("sample eps must be positive");
    double s = pt.y, pw = 1.0;
    for (double c : knownCoeffs) {
      s -= c * pw;
      pw *= pt.eps;
    }
    eps.push_back(pt.eps);
    r.push_back(s / std::pow(pt.eps, targetOrder));
  }
  {
    auto sorted = eps;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("sample eps values must be distinct");
    if (sorted.back() < 4.0 * sorted.front())
      throw IllConditioned("eps grid spans less than a factor 4");
  }

  const int deg = options.fitOrder;
  const auto coef = polyFit(eps, r, deg);
  const double c0 = coef[0];
  const std::size_t m = eps.size();

  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    ss += std::pow(r[i] - evalPoly(coef, eps[i]), 2);
  const double rms = std::sqrt(ss / m);
  const double sigma = m > static_cast<std::size_t>(deg + 1)
                           ? std::sqrt(ss / (m - deg - 1))
                           : rms;

  // statistical error of c0: perturb each r by sigma and propagate
  double stat = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    auto rp = r;
    rp[i] += sigma;
    stat += std::pow(polyFit(eps, rp, deg)[0] - c0, 2);
  }
  stat = std::sqrt(stat);

  double loo = 0.0;
  if (m > static_cast<std::size_t>(deg + 2)) {
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> e2, r2;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) {
          e2.push_back(eps[j]);
          r2.push_back(r[j]);
        }
      loo = std::max(loo, std::abs(polyFit(e2, r2, deg)[0] - c0));
    }
  }

  double model = 0.0;
  if (m > static_cast<std::size_t>(deg + 2))
    model = std::abs(polyFit(eps, r, deg + 1)[0] - c0);

  // noise and uncertain lower coefficients, pushed through the same fit
  double noiseProp = 0.0, noiseR = 0.0;
  if (options.noise > 0.0) {
    for (std::size_t i = 0; i < m; ++i) {
      auto dr = std::vector<double>(m, 0.0);
      dr[i] = options.noise / std::pow(eps[i], targetOrder);
      noiseR = std::max(noiseR, dr[i]);
      noiseProp += std::pow(polyFit(eps, dr, deg)[0], 2);
    }
    noiseProp = std::sqrt(noiseProp);
  }
  double knownProp = 0.0;
  for (std::size_t k = 0; k < options.knownUncertainty.size() && k < knownCoeffs.size(); ++k) {
    std::vector<double> dr(m);
    for (std::size_t i = 0; i < m; ++i)
      dr[i] = options.knownUncertainty[k] * std::pow(eps[i], static_cast<int>(k) - targetOrder);
    knownProp += std::pow(polyFit(eps, dr, deg)[0], 2);
  }
  knownProp = std::sqrt(knownProp);

  CoefficientEstimate out;
  out.value = c0;
  out.fitOrder = deg;
  out.epsGrid = eps;
  const double floor = 1e-12 * std::max(1.0, std::abs(c0));
  out.uncertainty = std::max({stat, loo, model, floor}) +
                    std::hypot(noiseProp, knownProp);

  if (rms > std::abs(c0) && rms > floor)
    throw IllConditioned("fit residual " + std::to_string(rms) +
                         " exceeds the estimate " + std::to_string(c0));
  if (options.noise > 0.0 && 10.0 * noiseR > std::max(std::abs(c0), out.uncertainty))
    throw IllConditioned("solver noise propagated into the fit (" +
                         std::to_string(noiseR) + ") is not 10x below the signal");
  return out;
}

std::vector<EpsSample> sampleGrid(const StateLabel &state,
                                  const std::vector<double> &epsGrid,
                                  const ShootingOptions &options) {
  for (double e : epsGrid)
    if (!(e > 0.0 && e <= 0.005))
      throw OutOfRange("eps grid points must lie in (0, 0.005]");
  std::vector<std::future<EigenResult>> jobs;
  for (double e : epsGrid)
    jobs.push_back(std::async(std::launch::async, [state, e, options] {
      return solveNbar(state, DimensionParam::fromEpsilon(e), options);
    }));
  std::vector<EpsSample> out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const EigenResult res = jobs[i].get();
    EpsSample s;
    s.eps = epsGrid[i];
    s.nbarDE = res.nbar;
    s.iDE = res.normIntegral;
    // midpoint of the final bracket; n-bar moves by < 1e-15 under 10x tighter
    // integration tolerance, so the floor term is generous
    s.nbarNoise = 0.5 * res.bracketWidth + 1e-13 * state.n;
    s.iNoise = res.normUncertainty + 1e-11;
    out.push_back(s);
  }
  return out;
}

XiEstimates estimateXiCoefficients(const StateLabel &state,
                                   const std::vector<EpsSample> &samples) {
  if (samples.size() < 4)
    throw InvalidArgument("need at least 4 eps samples");
  std::vector<EpsPoint> pts;
  double noise = 0.0;
  for (const auto &s : samples) {
    pts.push_back({s.eps, s.nbarDE / state.n});
    noise = std::max(noise, s.nbarNoise / state.n);
  }
  const double x1 = xi1(state);
  FitOptions opt;
  opt.noise = noise;
  XiEstimates out;
  // xi^[2] feeds xi^[3] through 1/eps, so its fit also carries the eps^2
  // term; with a linear model the bias alone shifts xi^[3] by ~0.05.
  opt.fitOrder = 2;
  out.xi2 = estimateNextCoefficient(pts, {1.0, x1}, 2, opt);
  opt.fitOrder = 1;

  double xi2 = out.xi2.value, xi2Unc = out.xi2.uncertainty;
  if (state.n == 1) {
    xi2 = groundStateXi2(dalgarnoLewisSolve(state).kappa);
    xi2Unc = 1e-9;
  }
  opt.knownUncertainty = {0.0, 0.0, xi2Unc};
  out.xi3 = estimateNextCoefficient(pts, {1.0, x1, xi2}, 3, opt);
  return out;
}

XiEstimates estimateXiCoefficients(const StateLabel &state,
                                   const std::vector<double> &epsGrid) {
  return estimateXiCoefficients(state, sampleGrid(state, epsGrid));
}

CoefficientEstimate estimateI2(const StateLabel &state,
                               const std::vector<EpsSample> &samples) {
  if (samples.size() < 4)
    throw InvalidArgument("need at least 4 eps samples");
  std::vector<EpsPoint> pts;
  double noise = 0.0;
  for (const auto &s : samples) {
    pts.push_back({s.eps, s.iDE});
    noise = std::max(noise, s.iNoise);
  }
  FitOptions opt;
  opt.noise = noise;
  return estimateNextCoefficient(pts, {1.0, iOrder1(state)}, 2, opt);
}

CoefficientEstimate estimateI2(const StateLabel &state,
                               const std::vector<double> &epsGrid) {
  return estimateI2(state, sampleGrid(state, epsGrid));
}

} // namespace hydrod

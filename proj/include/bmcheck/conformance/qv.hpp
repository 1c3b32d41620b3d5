#pragma once

#include <vector>

#include "bmcheck/conformance/options.hpp"
#include "bmcheck/conformance/report.hpp"
#include "bmcheck/process/path_ensemble.hpp"

namespace bmcheck::conformance {

/// Realized quadratic variation diagnostics, one entry per output coordinate c.
///
/// QV_t = sum over steps up to t of (dX_c)^2 per path; sigma2[c] is the
/// average QV_T / T. The linearity residual of a path is
/// max_k |QV_{t_k} - sigma2 t_k| / (1 + sigma2 t_k); residual[c] is its mean
/// over paths. threshold[c] = m + z s sqrt(1/N + 1/M), where m and s are the
/// mean and standard deviation of the per-path residual over M pooled paths of
/// 1-d Brownian motions with variance sigma2[c] on the same grid, and z is the
/// normal quantile at level alpha / d.
struct QVReport {
  std::vector<double> sigma2;
  std::vector<std::vector<double>> curve;  ///< path-averaged QV at each grid time
  std::vector<double> residual;
  std::vector<double> threshold;
  bool monotone = true;
  TestReport report;
};

/// Requires K >= 100 steps.
QVReport qv_linearity(const process::PathEnsemble& ensemble,
                      const TestOptions& options = {});

/// Mean over paths of the per-path linearity residual of one coordinate, using
/// the slope estimated from the same paths. Writes the slope to sigma2.
double qv_residual(const process::PathEnsemble& ensemble, std::size_t coordinate,
                   double& sigma2);

}  // namespace bmcheck::conformance

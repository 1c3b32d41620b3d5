#pragma once

#include <utility>

#include "bmcheck/common/linalg.hpp"
#include "bmcheck/conformance/options.hpp"
#include "bmcheck/conformance/report.hpp"
#include "bmcheck/process/path_ensemble.hpp"

namespace bmcheck::conformance {

struct DriftEstimate {
  Vector mu;
  Vector std_error;
};

/// Centred regression features of x: x_j, x_j^2, x_i x_j (i < j) and |x|.
SampleMatrix conditional_mean_features(const SampleMatrix& x);

/// Regresses out(t) - out(s) on features of in(s), per output coordinate.
/// mu = intercept / (t - s). Rejects when any feature coefficient is
/// significant after Bonferroni adjustment (HC3 standard errors, two-sided
/// Student t). Throws DegenerateDesign when the design is rank-deficient.
std::pair<DriftEstimate, TestReport> conditional_mean_test(
    const process::PathEnsemble& ensemble_in, const process::PathEnsemble& ensemble_out,
    double s, double t, const TestOptions& options = {});

}  // namespace bmcheck::conformance

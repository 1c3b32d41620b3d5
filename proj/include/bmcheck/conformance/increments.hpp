#pragma once

#include <utility>

#include "bmcheck/common/linalg.hpp"
#include "bmcheck/conformance/options.hpp"
#include "bmcheck/conformance/report.hpp"
#include "bmcheck/process/path_ensemble.hpp"

namespace bmcheck::conformance {

using Window = std::pair<double, double>;

/// Sliced energy-distance two-sample test with a permutation p-value.
/// Requires N, M >= 100.
TestReport two_sample_test(const SampleMatrix& x, const SampleMatrix& y,
                           const TestOptions& options = {});

/// Two-sample test between the increments over [t1, t1 + delta] and
/// [t2, t2 + delta]. Throws WindowNotOnGrid.
TestReport stationarity_test(const process::PathEnsemble& ensemble, double delta,
                             double t1, double t2, const TestOptions& options = {});

/// Distance-covariance permutation test between the increments over two
/// windows, on the first min(N, dcov_max_samples) paths. Throws
/// WindowNotOnGrid.
TestReport increment_independence_test(const process::PathEnsemble& ensemble,
                                       Window first, Window second,
                                       const TestOptions& options = {});

}  // namespace bmcheck::conformance

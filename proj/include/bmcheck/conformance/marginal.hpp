#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bmcheck/common/linalg.hpp"
#include "bmcheck/conformance/options.hpp"
#include "bmcheck/conformance/report.hpp"

namespace bmcheck::conformance {

/// Parametric-bootstrap null of the Gaussian goodness-of-fit statistic.
///
/// After whitening with the fitted mean and covariance the statistic of a
/// Gaussian sample has a law that depends only on (N, d), so one null serves
/// every marginal of the same shape.
struct GaussianNull {
  std::size_t samples = 0;
  std::size_t dimension = 0;
  std::vector<double> replicates;  ///< sorted ascending

  /// (1 + #{replicates >= statistic}) / (B + 1)
  double p_value(double statistic) const;
};

GaussianNull gaussian_marginal_null(std::size_t samples, std::size_t dimension,
                                    const TestOptions& options = {});

/// Centres by the sample mean and multiplies by the inverse Cholesky factor of
/// the sample covariance. Throws DegenerateSample when the covariance is
/// numerically singular.
SampleMatrix whiten(const SampleMatrix& samples);

/// Energy goodness-of-fit test of samples against the Gaussian with the
/// fitted mean and covariance. t only labels the report. Requires N >= 100.
TestReport gaussian_marginal_test(const SampleMatrix& samples, double t,
                                  const TestOptions& options = {});
/// Same, reusing a precomputed null of matching shape.
TestReport gaussian_marginal_test(const SampleMatrix& samples, double t,
                                  const GaussianNull& null,
                                  const TestOptions& options = {});

}  // namespace bmcheck::conformance

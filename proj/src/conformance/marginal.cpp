#include "bmcheck/conformance/marginal.hpp"

#include <algorithm>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"
#include "bmcheck/common/parallel.hpp"
#include "bmcheck/common/rng.hpp"
#include "bmcheck/conformance/energy.hpp"

namespace bmcheck::conformance {
namespace {

constexpr std::size_t kMinSamples = 100;

void require_shape(const SampleMatrix& samples) {
  if (samples.rows() < static_cast<Eigen::Index>(kMinSamples))
    throw InvalidArgument("gaussian_marginal_test: need at least 100 samples");
  if (samples.cols() < 1)
    throw InvalidArgument("gaussian_marginal_test: zero-dimensional samples");
}

}  // namespace

double GaussianNull::p_value(double statistic) const {
  const auto first = std::lower_bound(replicates.begin(), replicates.end(), statistic);
  const auto exceed = static_cast<double>(replicates.end() - first);
  return (1.0 + exceed) / (static_cast<double>(replicates.size()) + 1.0);
}

SampleMatrix whiten(const SampleMatrix& samples) {
  const Vector mean = sample_mean(samples);
  const Matrix cov = sample_covariance(samples);
  Matrix l;
  try {
    l = cholesky(cov);
  } catch (const NotPositiveDefinite&) {
    throw DegenerateSample("sample covariance is numerically singular");
  }
  if (!(cov.diagonal().maxCoeff() > 0.0))
    throw DegenerateSample("sample covariance is zero");
  // Rows solve L w = x - mean.
  SampleMatrix centred = samples.rowwise() - mean.transpose();
  Matrix w = l.triangularView<Eigen::Lower>().solve(centred.transpose());
  return w.transpose();
}

GaussianNull gaussian_marginal_null(std::size_t samples, std::size_t dimension,
                                    const TestOptions& options) {
  if (samples < kMinSamples)
    throw InvalidArgument("gaussian_marginal_null: need at least 100 samples");
  if (options.bootstrap < 1)
    throw InvalidArgument("gaussian_marginal_null: need at least one replicate");
  const auto dirs = projection_directions(dimension, options.projections);
  const auto key = derive_key(options.seed, "gaussian_bootstrap");
  GaussianNull null;
  null.samples = samples;
  null.dimension = dimension;
  null.replicates.resize(options.bootstrap);
  parallel_ranges(options.bootstrap, [&](std::size_t begin, std::size_t end) {
    SampleMatrix z(samples, dimension);
    for (std::size_t b = begin; b < end; ++b) {
      Substream rng(key, b);
      for (Eigen::Index i = 0; i < z.rows(); ++i)
        for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = rng.normal();
      null.replicates[b] = energy_gof_statistic(whiten(z), dirs);
    }
  });
  std::sort(null.replicates.begin(), null.replicates.end());
  return null;
}

TestReport gaussian_marginal_test(const SampleMatrix& samples, double t,
                                  const TestOptions& options) {
  require_shape(samples);
  const auto null = gaussian_marginal_null(static_cast<std::size_t>(samples.rows()),
                                           static_cast<std::size_t>(samples.cols()),
                                           options);
  return gaussian_marginal_test(samples, t, null, options);
}

TestReport gaussian_marginal_test(const SampleMatrix& samples, double t,
                                  const GaussianNull& null,
                                  const TestOptions& options) {
  require_shape(samples);
  if (null.samples != static_cast<std::size_t>(samples.rows()) ||
      null.dimension != static_cast<std::size_t>(samples.cols()))
    throw DimensionMismatch("gaussian_marginal_test: null was built for another shape");
  const auto dirs = projection_directions(null.dimension, options.projections);
  const double stat = energy_gof_statistic(whiten(samples), dirs);
  nlohmann::ordered_json details;
  details["t"] = t;
  details["samples"] = samples.rows();
  details["mean"] = json_vector(sample_mean(samples));
  details["covariance"] = json_matrix(sample_covariance(samples));
  details["bootstrap"] = null.replicates.size();
  return p_value_report("gaussian_marginal(t=" + format_number(t) + ")",
                        "gaussian_marginal", stat, null.p_value(stat),
                        options.alpha, std::move(details));
}

}  // namespace bmcheck::conformance

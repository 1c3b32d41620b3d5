#include "bmcheck/conformance/increments.hpp"

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"
#include "bmcheck/common/rng.hpp"
#include "bmcheck/conformance/dcov.hpp"
#include "bmcheck/conformance/energy.hpp"

namespace bmcheck::conformance {
namespace {

std::string window_text(double s, double t) {
  return "[" + format_number(s) + "," + format_number(t) + "]";
}

SampleMatrix window_increments(const process::PathEnsemble& e, double s, double t) {
  if (!(s < t)) throw InvalidArgument("window " + window_text(s, t) + " is empty");
  return e.increments(e.grid().require_index(s), e.grid().require_index(t));
}

}  // namespace

TestReport two_sample_test(const SampleMatrix& x, const SampleMatrix& y,
                           const TestOptions& options) {
  if (x.cols() != y.cols())
    throw DimensionMismatch("two_sample_test: samples differ in dimension");
  if (x.rows() < 100 || y.rows() < 100)
    throw InvalidArgument("two_sample_test: need at least 100 samples per side");
  const auto dirs = projection_directions(static_cast<std::size_t>(x.cols()),
                                          options.projections);
  const auto r = energy_permutation_test(x, y, dirs, options.permutations,
                                         derive_key(options.seed, "permutation"));
  nlohmann::ordered_json details;
  details["samples"] = {x.rows(), y.rows()};
  details["energy_distance"] =
      r.statistic * static_cast<double>(x.rows() + y.rows()) /
      (static_cast<double>(x.rows()) * static_cast<double>(y.rows()));
  details["permutations"] = options.permutations;
  details["projections"] = dirs.size();
  return p_value_report("two_sample", "energy_two_sample", r.statistic, r.p_value,
                        options.alpha, std::move(details));
}

TestReport stationarity_test(const process::PathEnsemble& ensemble, double delta,
                             double t1, double t2, const TestOptions& options) {
  if (!(delta > 0)) throw InvalidArgument("stationarity_test: delta must be > 0");
  const SampleMatrix a = window_increments(ensemble, t1, t1 + delta);
  const SampleMatrix b = window_increments(ensemble, t2, t2 + delta);
  TestReport r = two_sample_test(a, b, options);
  r.name = "stationarity(" + window_text(t1, t1 + delta) + " vs " +
           window_text(t2, t2 + delta) + ")";
  r.kind = "stationarity";
  r.details["variance_first"] = json_vector(sample_covariance(a).diagonal());
  r.details["variance_second"] = json_vector(sample_covariance(b).diagonal());
  return r;
}

TestReport increment_independence_test(const process::PathEnsemble& ensemble,
                                       Window first, Window second,
                                       const TestOptions& options) {
  SampleMatrix a = window_increments(ensemble, first.first, first.second);
  SampleMatrix b = window_increments(ensemble, second.first, second.second);
  const auto n = std::min<Eigen::Index>(
      a.rows(), static_cast<Eigen::Index>(options.dcov_max_samples));
  if (n < 2) throw InvalidArgument("increment_independence_test: need two paths");
  a.conservativeResize(n, Eigen::NoChange);
  b.conservativeResize(n, Eigen::NoChange);
  const auto r = dcov_permutation_test(a, b, options.permutations,
                                       derive_key(options.seed, "dcov_permutation"));
  nlohmann::ordered_json details;
  details["samples"] = n;
  details["dcov2"] = r.statistic / static_cast<double>(n);
  details["permutations"] = options.permutations;
  const bool overlap = first.first < second.second && second.first < first.second;
  details["windows_overlap"] = overlap;
  return p_value_report("independence(" + window_text(first.first, first.second) +
                            " vs " + window_text(second.first, second.second) + ")",
                        "independence", r.statistic, r.p_value, options.alpha,
                        std::move(details));
}

}  // namespace bmcheck::conformance

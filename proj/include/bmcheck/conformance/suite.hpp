#pragma once

#include <vector>

#include "bmcheck/conformance/increments.hpp"
#include "bmcheck/conformance/options.hpp"
#include "bmcheck/conformance/qv.hpp"
#include "bmcheck/conformance/report.hpp"
#include "bmcheck/process/path_ensemble.hpp"

namespace bmcheck::conformance {

struct SuiteOptions {
  TestOptions test;
  std::vector<double> marginal_times{0.5, 1.0, 2.0};
  double stationarity_delta = 1.0;
  double stationarity_t1 = 0.0;
  double stationarity_t2 = 1.0;
  std::vector<std::pair<Window, Window>> independence_windows{{{0.0, 1.0}, {1.0, 2.0}}};
  double conditional_s = 1.0;
  double conditional_t = 2.0;
};

struct SuiteResult {
  /// p-value tests with Holm thresholds applied, in run order.
  std::vector<TestReport> reports;
  QVReport qv;
  double family_alpha = 0.01;
  std::size_t corrected_rejections = 0;
  Verdict verdict = Verdict::pass;

  /// One-line outcome: residual = number of failing components, threshold 0.
  TestReport summary() const;
  /// {family_alpha, corrected_rejections, verdict}
  nlohmann::ordered_json overall_json() const;
};

/// Runs every component test on the ensemble against its own natural
/// filtration. Verdict is pass iff no Holm-corrected rejection and the QV
/// check passes. Component errors are collected and rethrown together as
/// SuiteError.
SuiteResult conformance_suite(const process::PathEnsemble& ensemble,
                              const SuiteOptions& options = {});

}  // namespace bmcheck::conformance

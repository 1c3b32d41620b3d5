#include "bmcheck/conformance/suite.hpp"

#include <functional>
#include <limits>
#include <string>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"
#include "bmcheck/common/rng.hpp"
#include "bmcheck/conformance/conditional_mean.hpp"
#include "bmcheck/conformance/holm.hpp"
#include "bmcheck/conformance/marginal.hpp"

namespace bmcheck::conformance {

TestReport SuiteResult::summary() const {
  double min_adjusted = 1.0;
  nlohmann::ordered_json failing = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    if (r.details.contains("holm_adjusted_p"))
      min_adjusted = std::min(min_adjusted, r.details["holm_adjusted_p"].get<double>());
    if (r.verdict == Verdict::reject) failing.push_back(r.name);
  }
  if (qv.report.verdict == Verdict::reject) failing.push_back(qv.report.name);
  nlohmann::ordered_json details;
  details["family_alpha"] = family_alpha;
  details["corrected_rejections"] = corrected_rejections;
  details["qv_verdict"] = std::string(to_string(qv.report.verdict));
  details["failing"] = failing;
  return residual_report("conformance", "suite", min_adjusted,
                         static_cast<double>(failing.size()), 0.0, std::move(details));
}

nlohmann::ordered_json SuiteResult::overall_json() const {
  nlohmann::ordered_json j;
  j["family_alpha"] = family_alpha;
  j["corrected_rejections"] = corrected_rejections;
  j["verdict"] = std::string(to_string(verdict));
  return j;
}

SuiteResult conformance_suite(const process::PathEnsemble& ensemble,
                              const SuiteOptions& options) {
  SuiteResult result;
  result.family_alpha = options.test.alpha;
  std::vector<std::string> errors;
  std::size_t index = 0;

  // Each component gets its own derived seed.
  auto component = [&](const std::string& label, const std::function<void(TestOptions)>& run) {
    TestOptions opts = options.test;
    opts.seed = derive_key(options.test.seed, "suite", index++);
    try {
      run(opts);
    } catch (const std::exception& e) {
      errors.push_back(label + ": " + e.what());
    }
  };

  if (!options.marginal_times.empty()) {
    std::optional<GaussianNull> null;
    component("gaussian_marginal_null", [&](TestOptions opts) {
      null = gaussian_marginal_null(ensemble.num_paths(), ensemble.dimension(), opts);
    });
    for (double t : options.marginal_times)
      component("gaussian_marginal(t=" + format_number(t) + ")", [&](TestOptions opts) {
        if (!null) throw Error("bootstrap null unavailable");
        const auto k = ensemble.grid().require_index(t);
        result.reports.push_back(
            gaussian_marginal_test(ensemble.marginal(k), t, *null, opts));
      });
  }
  component("stationarity", [&](TestOptions opts) {
    result.reports.push_back(stationarity_test(ensemble, options.stationarity_delta,
                                               options.stationarity_t1,
                                               options.stationarity_t2, opts));
  });
  for (const auto& [a, b] : options.independence_windows)
    component("independence", [&](TestOptions opts) {
      result.reports.push_back(increment_independence_test(ensemble, a, b, opts));
    });
  component("conditional_mean", [&](TestOptions opts) {
    result.reports.push_back(conditional_mean_test(ensemble, ensemble, options.conditional_s,
                                                   options.conditional_t, opts)
                                 .second);
  });
  component("qv_linearity", [&](TestOptions opts) {
    result.qv = qv_linearity(ensemble, opts);
  });

  if (!errors.empty()) {
    std::string msg = "conformance suite failed:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw SuiteError(msg);
  }

  std::vector<double> p;
  for (const auto& r : result.reports) p.push_back(*r.p_value);
  const auto h = holm(p, options.test.alpha);
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    auto& r = result.reports[i];
    r.details["uncorrected_alpha"] = options.test.alpha;
    r.details["holm_adjusted_p"] = h.adjusted[i];
    set_threshold(r, h.thresholds[i]);
  }
  result.corrected_rejections = h.rejections;
  result.verdict = h.rejections == 0 && result.qv.report.verdict == Verdict::pass
                       ? Verdict::pass
                       : Verdict::reject;
  return result;
}

}  // namespace bmcheck::conformance

#include "bmcheck/conformance/report.hpp"

#include <cmath>

#include "bmcheck/common/errors.hpp"

namespace bmcheck::conformance {

TestReport p_value_report(std::string name, std::string kind, double statistic,
                          double p_value, double alpha,
                          nlohmann::ordered_json details) {
  if (!(p_value >= 0.0 && p_value <= 1.0))
    throw InvalidArgument(name + ": p-value outside [0, 1]");
  TestReport r;
  r.name = std::move(name);
  r.kind = std::move(kind);
  r.statistic = statistic;
  r.p_value = p_value;
  r.details = std::move(details);
  set_threshold(r, alpha);
  return r;
}

TestReport residual_report(std::string name, std::string kind, double statistic,
                           double residual, double threshold,
                           nlohmann::ordered_json details) {
  TestReport r;
  r.name = std::move(name);
  r.kind = std::move(kind);
  r.statistic = statistic;
  r.residual = residual;
  r.details = std::move(details);
  set_threshold(r, threshold);
  return r;
}

void set_threshold(TestReport& report, double threshold) {
  report.threshold = threshold;
  if (report.p_value)
    report.verdict = *report.p_value < threshold ? Verdict::reject : Verdict::pass;
  else
    // A NaN residual never passes.
    report.verdict = report.residual && *report.residual <= threshold
                         ? Verdict::pass
                         : Verdict::reject;
}

nlohmann::ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::ordered_json json_vector(const Vector& v) {
  auto j = nlohmann::ordered_json::array();
  for (double x : v) j.push_back(json_number(x));
  return j;
}

nlohmann::ordered_json json_matrix(const Matrix& m) {
  auto j = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    j.push_back(json_vector(m.row(i).transpose()));
  return j;
}

nlohmann::ordered_json to_json(const TestReport& report) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["kind"] = report.kind;
  j["statistic"] = json_number(report.statistic);
  if (report.p_value) j["p_value"] = json_number(*report.p_value);
  if (report.residual) j["residual"] = json_number(*report.residual);
  j["threshold"] = json_number(report.threshold);
  j["verdict"] = std::string(to_string(report.verdict));
  j["details"] = report.details;
  return j;
}

}  // namespace bmcheck::conformance

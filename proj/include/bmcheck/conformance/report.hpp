#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "bmcheck/common/linalg.hpp"
#include "bmcheck/common/verdict.hpp"

namespace bmcheck::conformance {

/// Outcome of one statistical test or numerical check.
///
/// Statistical tests carry a p-value and reject when p_value < threshold.
/// Residual checks carry a residual instead and reject when
/// residual > threshold.
struct TestReport {
  std::string name;
  std::string kind;
  double statistic = 0.0;
  std::optional<double> p_value;
  std::optional<double> residual;
  double threshold = 0.0;
  Verdict verdict = Verdict::pass;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

TestReport p_value_report(std::string name, std::string kind, double statistic,
                          double p_value, double alpha,
                          nlohmann::ordered_json details = nlohmann::ordered_json::object());

TestReport residual_report(std::string name, std::string kind, double statistic,
                           double residual, double threshold,
                           nlohmann::ordered_json details = nlohmann::ordered_json::object());

/// Re-evaluates the verdict against a new threshold (used by Holm).
void set_threshold(TestReport& report, double threshold);

/// {name, kind, statistic, p_value?, residual?, threshold, verdict, details}
nlohmann::ordered_json to_json(const TestReport& report);

/// JSON number, or null when v is not finite.
nlohmann::ordered_json json_number(double v);
nlohmann::ordered_json json_vector(const Vector& v);
nlohmann::ordered_json json_matrix(const Matrix& m);

}  // namespace bmcheck::conformance

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bmcheck/common/linalg.hpp"

namespace bmcheck::cli {

inline constexpr int kSchemaVersion = 1;

/// Grid of a PDE check: {mask: box|ball|annulus, spacing, lo/hi or
/// center/radius or center/inner/outer}.
struct DomainSpec {
  std::string mask = "box";
  double spacing = 0.05;
  Vector lo, hi, center;
  double radius = 1.0, inner = 0.0, outer = 1.0;
};

/// One entry of the "tests" array. Fields not used by the test type keep
/// their defaults.
struct TestSpec {
  std::string type;
  bool expect_reject = false;

  std::vector<double> times;                           // gaussian_marginal, marginal_two_sample, conformance
  double delta = 1.0, t1 = 0.0, t2 = 1.0;              // stationarity, conformance
  std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>> windows;
  double s = 1.0, t = 2.0;                             // conditional_mean, conformance

  std::string field;                                   // PDE checks
  std::optional<DomainSpec> domain;
  double tolerance = 0.0;
  double target = 1.0;
  Vector x;
  double r = 1.0, tau = 1.0, mu = 0.0;
  std::size_t samples = 1'000'000;
  std::size_t n = 2;                                   // ball_volume
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::size_t dimension = 2;
  Vector drift;
  Matrix covariance;
  double horizon = 2.0;
  std::size_t steps = 1000;
  std::vector<double> times;  ///< explicit grid, overrides horizon/steps
  Vector origin;
  std::size_t paths = 100000;
  std::string transform = "identity";
  std::uint64_t seed = 0;
  double alpha = 0.01;
  std::size_t bootstrap = 200;
  std::size_t permutations = 500;
  std::vector<TestSpec> tests;
  std::optional<std::string> output;

  /// Canonical echo of every setting, in a fixed key order.
  nlohmann::ordered_json to_json() const;
};

/// Validates a parsed config object. Unknown keys, wrong types and
/// out-of-range values are all collected into one ConfigInvalid.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Re-checks the cross-field invariants of a config built or modified in
/// code (times on the grid, alpha in (0,1), N >= 100 ...).
void validate(const ScenarioConfig& config);

std::vector<std::string> builtin_names();
ScenarioConfig builtin_scenario(const std::string& name);

/// Test types that need simulated paths.
bool needs_paths(const TestSpec& test);

}  // namespace bmcheck::cli

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bmcheck/cli/scenario.hpp"
#include "bmcheck/common/errors.hpp"
#include "bmcheck/conformance/report.hpp"

namespace bmcheck::cli {

/// A pipeline error, with the stage it came from prefixed to the message.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// "verdict" entries decide the overall outcome; "component" entries are the
/// individual parts of a conformance suite, reported for information.
enum class Role { verdict, component };

struct ReportEntry {
  conformance::TestReport report;
  Role role = Role::verdict;
  bool expect_reject = false;

  /// Whether the verdict matches what the config asked for.
  bool as_expected() const;
};

struct RunReport {
  nlohmann::ordered_json config;
  std::vector<ReportEntry> reports;
  std::string verdict;  ///< pass, reject or vacuous-pass
  std::size_t corrected_rejections = 0;
  std::vector<std::string> unexpected;
  std::uint64_t seed = 0;
  std::optional<double> duration_ms;
  std::optional<double> throughput_paths_per_s;
  std::string version;

  /// 0 when every verdict entry came out as expected, else 1.
  int exit_code() const;
};

struct RunOptions {
  /// Fill in wall-clock duration and throughput. Off by default so that
  /// reports are byte-identical across runs.
  bool timing = false;
};

/// simulate -> transform -> tests. Validates first (ConfigInvalid); errors
/// raised by a stage come back as StageError.
RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

std::string toolkit_version();

}  // namespace bmcheck::cli

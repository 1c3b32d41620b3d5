#pragma once

#include <string>

#include <json.hpp>

#include "bmcheck/cli/run.hpp"

namespace bmcheck::cli {

/// {schema_version, config, reports, overall, meta} in a fixed key order.
nlohmann::ordered_json report_json(const RunReport& report);

/// format is json, csv or summary; anything else throws UnsupportedFormat.
std::string emit_report(const RunReport& report, const std::string& format);

}  // namespace bmcheck::cli

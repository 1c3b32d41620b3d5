#include "bmcheck/cli/emit.hpp"

#include <cstdio>
#include <sstream>

#include "bmcheck/common/format.hpp"

namespace bmcheck::cli {
namespace {

using nlohmann::ordered_json;

std::string role_name(Role r) { return r == Role::verdict ? "verdict" : "component"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? format_number(*v) : std::string();
}

std::string fixed(double v, int precision) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() > width) s = s.substr(0, width - 1) + "~";
  s.resize(width, ' ');
  return s;
}

std::string emit_csv(const RunReport& report) {
  std::string out = "name,kind,statistic,p_value,residual,threshold,verdict,expect_reject,role\n";
  for (const auto& e : report.reports) {
    const auto& r = e.report;
    out += csv_field(r.name) + ',' + csv_field(r.kind) + ',' + csv_number(r.statistic) + ',' +
           csv_number(r.p_value) + ',' + csv_number(r.residual) + ',' +
           csv_number(r.threshold) + ',' + std::string(to_string(r.verdict)) + ',' +
           (e.expect_reject ? "true" : "false") + ',' + role_name(e.role) + '\n';
  }
  return out;
}

std::string emit_summary(const RunReport& report) {
  std::ostringstream out;
  out << "scenario " << report.config.value("name", std::string()) << "  seed " << report.seed
      << "  version " << report.version << '\n';
  out << pad("test", 48) << ' ' << pad("statistic", 12) << ' ' << pad("p/residual", 12) << ' '
      << pad("threshold", 12) << ' ' << pad("verdict", 8) << ' ' << "expected\n";
  out << std::string(48 + 12 * 3 + 8 + 4 + 8, '-') << '\n';
  for (const auto& e : report.reports) {
    const auto& r = e.report;
    const double shown = r.p_value ? *r.p_value : r.residual.value_or(0.0);
    std::string expected = "-";
    if (e.role == Role::verdict) expected = e.expect_reject ? "reject" : "pass";
    out << pad((e.role == Role::component ? "  " : "") + r.name, 48) << ' '
        << pad(fixed(r.statistic, 6), 12) << ' ' << pad(fixed(shown, 6), 12) << ' '
        << pad(fixed(r.threshold, 6), 12) << ' ' << pad(std::string(to_string(r.verdict)), 8)
        << ' ' << expected << '\n';
  }
  out << "overall: " << report.verdict << "  corrected rejections: "
      << report.corrected_rejections << '\n';
  for (const auto& name : report.unexpected) out << "unexpected: " << name << '\n';
  if (report.duration_ms) out << "duration: " << fixed(*report.duration_ms, 6) << " ms\n";
  return out.str();
}

}  // namespace

ordered_json report_json(const RunReport& report) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = report.config;
  auto reports = ordered_json::array();
  for (const auto& e : report.reports) {
    auto r = conformance::to_json(e.report);
    r["role"] = role_name(e.role);
    r["expect_reject"] = e.expect_reject;
    reports.push_back(std::move(r));
  }
  j["reports"] = std::move(reports);
  j["overall"]["verdict"] = report.verdict;
  j["overall"]["corrected_rejections"] = report.corrected_rejections;
  j["overall"]["unexpected"] = report.unexpected;
  j["meta"]["seed"] = report.seed;
  j["meta"]["duration_ms"] =
      report.duration_ms ? ordered_json(*report.duration_ms) : ordered_json(nullptr);
  j["meta"]["throughput_paths_per_s"] = report.throughput_paths_per_s
                                            ? ordered_json(*report.throughput_paths_per_s)
                                            : ordered_json(nullptr);
  j["meta"]["version"] = report.version;
  return j;
}

std::string emit_report(const RunReport& report, const std::string& format) {
  if (format == "json") return report_json(report).dump(2) + "\n";
  if (format == "csv") return emit_csv(report);
  if (format == "summary") return emit_summary(report);
  throw UnsupportedFormat("unsupported report format '" + format + "'");
}

}  // namespace bmcheck::cli

#pragma once

#include <json.hpp>

#include "pvilab/config.hpp"

namespace pvi {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchemaVersion = "1";

json complex_to_json(cplx z);
// Row-major list of [re, im] pairs plus the order.
json matrix_to_json(const Mat& m);
json config_to_json(const RunConfig& config);

// One named check with the tolerance it was judged against.
json check_entry(const std::string& name, double value, double tolerance, bool pass);

// Flatten a report tree into "path,value" CSV lines.
std::string report_to_csv(const json& report);

std::string render_report(const json& report, const std::string& format);

// Writes to the configured output ("-" = stdout); throws ConfigError on
// filesystem failure.
void emit_report(const json& report, const RunConfig& config);

}  // namespace pvi

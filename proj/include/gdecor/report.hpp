#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gdecor/experiment.hpp"

namespace gdecor::report {

inline constexpr const char* kReportSchema = "gdecor.report/1";
inline constexpr const char* kSweepSchema = "gdecor.sweep/1";
inline constexpr const char* kCsvVersion = "gdecor-sweep-csv/1";

struct SweepRow
{
    double axis_value = 0.0;
    experiment::CorrelationReport report;
};

nlohmann::json to_json(const experiment::CorrelationReport& r);

/// Throws ConfigError naming the first missing or non-finite field.
void validate_report_json(const nlohmann::json& j);

/// Shortest round-trip decimal form, so output is bit-stable.
std::string format_number(double v);

std::string sweep_csv(const std::string& axis,
                      const std::vector<std::string>& metadata,
                      const std::vector<SweepRow>& rows);

nlohmann::json sweep_json(const std::string& axis,
                          const std::vector<SweepRow>& rows);

} // namespace gdecor::report

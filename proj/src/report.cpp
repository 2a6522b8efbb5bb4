#include "gdecor/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "gdecor/errors.hpp"

namespace gdecor::report {

namespace {

constexpr const char* kNumericFields[]
    = {"n1", "n2", "coincidence", "delta", "smearing_factor", "visibility"};

} // namespace

nlohmann::json to_json(const experiment::CorrelationReport& r)
{
    return {{"schema", kReportSchema},
            {"formalism", formalism::to_string(r.formalism)},
            {"n1", r.n1},
            {"n2", r.n2},
            {"coincidence", r.coincidence},
            {"delta", r.delta},
            {"smearing_factor", r.smearing_factor},
            {"visibility", r.visibility},
            {"truncation_note", r.truncation_note}};
}

void validate_report_json(const nlohmann::json& j)
{
    if (!j.is_object() || j.value("schema", "") != kReportSchema)
    {
        throw ConfigError("report: missing or unknown schema tag");
    }
    for (const char* key : kNumericFields)
    {
        if (!j.contains(key) || !j[key].is_number()
            || !std::isfinite(j[key].get<double>()))
        {
            throw ConfigError(std::string("report: field '") + key
                              + "' missing or not finite");
        }
    }
    for (const char* key : {"n1", "n2", "coincidence"})
    {
        if (j[key].get<double>() < 0.0)
        {
            throw ConfigError(std::string("report: field '") + key
                              + "' is negative");
        }
    }
    const double s = j["smearing_factor"].get<double>();
    if (!(s > 0.0 && s <= 1.0))
    {
        throw ConfigError("report: smearing_factor outside (0, 1]");
    }
    const auto f = j.value("formalism", "");
    if (f != "mode" && f != "event")
    {
        throw ConfigError("report: formalism must be 'mode' or 'event'");
    }
    if (!j.contains("truncation_note") || !j["truncation_note"].is_string())
    {
        throw ConfigError("report: field 'truncation_note' missing");
    }
}

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string sweep_csv(const std::string& axis,
                      const std::vector<std::string>& metadata,
                      const std::vector<SweepRow>& rows)
{
    std::ostringstream out;
    out << "# " << kCsvVersion << "\n";
    for (const auto& line : metadata)
    {
        out << "# " << line << "\n";
    }
    out << axis << ",n1,n2,coincidence,delta,smearing_factor\n";
    for (const auto& row : rows)
    {
        const auto& r = row.report;
        out << format_number(row.axis_value) << ',' << format_number(r.n1)
            << ',' << format_number(r.n2) << ','
            << format_number(r.coincidence) << ',' << format_number(r.delta)
            << ',' << format_number(r.smearing_factor) << '\n';
    }
    return out.str();
}

nlohmann::json sweep_json(const std::string& axis,
                          const std::vector<SweepRow>& rows)
{
    nlohmann::json out{{"schema", kSweepSchema}, {"axis", axis}};
    auto& list = out["rows"] = nlohmann::json::array();
    for (const auto& row : rows)
    {
        auto entry = to_json(row.report);
        entry.erase("schema");
        entry["axis_value"] = row.axis_value;
        list.push_back(std::move(entry));
    }
    return out;
}

} // namespace gdecor::report

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gdecor/config.hpp"
#include "gdecor/report.hpp"

namespace gdecor::cli {

inline constexpr const char* kValidateSchema = "gdecor.validate/1";

/// Axes accepted by the sweep command.
const std::vector<std::string>& sweep_axes();

experiment::CorrelationReport cmd_predict(const config::RunConfig& cfg);

struct SweepTable
{
    std::string axis;
    std::vector<report::SweepRow> rows;
    /// key=value lines of the fixed configuration, sorted by key.
    std::vector<std::string> metadata;
};

/// Rows in ascending step order from sweep_from to sweep_to inclusive.
SweepTable cmd_sweep(const config::RunConfig& cfg);

/// Needs mass_length, d_t and r_base; variant defaults to satellite.
double cmd_threshold(const config::RunConfig& cfg);

/// The same scenario under the mode and then the event formalism.
std::pair<experiment::CorrelationReport, experiment::CorrelationReport>
cmd_compare(const config::RunConfig& cfg);

struct ValidateOptions
{
    bool inject_mass_sign_flip = false;
    std::size_t oracle_k_bins = 3;
    std::size_t oracle_omega_bins = 4;
    std::uint32_t seed = 20240611;
};

struct SuiteResult
{
    std::string name;
    bool passed = true;
    int checks = 0;
    int failures = 0;
    /// Largest relative discrepancy seen, in units of its tolerance.
    double worst = 0.0;
};

struct ValidationSummary
{
    std::vector<SuiteResult> suites;
    bool passed() const;
    nlohmann::json to_json() const;
};

/// Runs every invariant suite; throws ResourceError past the oracle caps.
ValidationSummary cmd_validate(const ValidateOptions& options);

/// Entry point: 0 success, 1 validation failure, 2 config error, 3 numeric.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gdecor::cli

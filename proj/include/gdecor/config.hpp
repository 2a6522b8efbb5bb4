#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "gdecor/experiment.hpp"

namespace gdecor::config {

/// Speed of light, for converting d_t given in seconds to meters.
inline constexpr double kSpeedOfLight = 2.99792458e8;

/// The closed set of recognised configuration keys.
const std::set<std::string>& known_keys();

/*!
 * Flat key=value configuration, as read from a file and then patched by
 * command-line overrides. Values are kept as text until a command asks for
 * them, so that a missing key is reported by name.
 */
class RunConfig
{
  public:
    /// Parse "key = value" lines; '#' starts a comment.
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);

    /// Throws ConfigError for keys outside known_keys().
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const;
    const std::map<std::string, std::string>& values() const { return values_; }

    std::string text(const std::string& key) const;
    std::string text_or(const std::string& key, const std::string& fallback) const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::optional<double> maybe_number(const std::string& key) const;
    /// d_t in meters; a trailing 's' means seconds.
    double d_t() const;

  private:
    std::map<std::string, std::string> values_;
};

/// Everything a single prediction needs, resolved from a RunConfig.
struct Scenario
{
    experiment::SchwarzschildBackground background{0.0};
    experiment::ExperimentLayout layout;
    experiment::SourceModel source;
    std::shared_ptr<const experiment::Spectrum> detector_spectrum;
    experiment::EventSmearing smearing = experiment::EventSmearing::gaussian(1.0);
    experiment::Formalism formalism = experiment::Formalism::Event;
    experiment::PredictOptions options;
    /// Set when detector placement ran.
    std::optional<experiment::Placement> placement;
};

experiment::Variant parse_variant(const std::string& s);
experiment::Formalism parse_formalism(const std::string& s);
experiment::DeltaModel parse_delta_model(const std::string& s);

/// Builds the scenario; placement runs unless placement=none.
Scenario resolve(const RunConfig& cfg);

} // namespace gdecor::config

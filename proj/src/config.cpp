#include "gdecor/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gdecor/errors.hpp"

namespace gdecor::config {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
    {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text)
{
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(text, &used);
    }
    catch (const std::exception&)
    {
        used = 0;
    }
    if (used == 0 || trim(text.substr(used)) != "" || !std::isfinite(v))
    {
        throw ConfigError("key '" + key + "': '" + text + "' is not a number");
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& text)
{
    if (text == "true" || text == "1" || text == "yes")
    {
        return true;
    }
    if (text == "false" || text == "0" || text == "no")
    {
        return false;
    }
    throw ConfigError("key '" + key + "': expected true or false");
}

double positive(const RunConfig& cfg, const std::string& key, double v)
{
    if (!(v > 0.0))
    {
        throw ConfigError("key '" + key + "' must be positive");
    }
    (void)cfg;
    return v;
}

} // namespace

const std::set<std::string>& known_keys()
{
    static const std::set<std::string> keys{
        // physics
        "mass_length", "r_base", "h", "x_m", "x_p", "x_d1", "x_d2", "t_d1",
        "t_d2", "d_t", "chi_max", "alpha_max", "k0", "sigma_k", "variant",
        "formalism", "source", "phi_c", "source_radius", "path_swap",
        "spectrum_file", "pump_file",
        // numerics
        "delta_model", "placement", "coefficients", "truncation",
        // sweeps and output
        "sweep_axis", "sweep_from", "sweep_to", "sweep_steps", "format",
        "output",
        // validation
        "oracle_k_bins", "oracle_omega_bins", "seed"};
    return keys;
}

RunConfig RunConfig::parse(const std::string& text)
{
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
        {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty())
        {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
        {
            std::ostringstream msg;
            msg << "config line " << line_no << ": expected key = value";
            throw ConfigError(msg.str());
        }
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str());
}

void RunConfig::set(const std::string& key, const std::string& value)
{
    if (!known_keys().count(key))
    {
        throw ConfigError("unknown config key '" + key + "'");
    }
    values_[key] = value;
}

bool RunConfig::has(const std::string& key) const
{
    return values_.count(key) != 0;
}

std::string RunConfig::text(const std::string& key) const
{
    auto it = values_.find(key);
    if (it == values_.end())
    {
        throw ConfigError("missing required key '" + key + "'");
    }
    return it->second;
}

std::string
RunConfig::text_or(const std::string& key, const std::string& fallback) const
{
    return has(key) ? text(key) : fallback;
}

double RunConfig::number(const std::string& key) const
{
    return parse_double(key, text(key));
}

double RunConfig::number_or(const std::string& key, double fallback) const
{
    return has(key) ? number(key) : fallback;
}

std::optional<double> RunConfig::maybe_number(const std::string& key) const
{
    if (!has(key))
    {
        return std::nullopt;
    }
    return number(key);
}

double RunConfig::d_t() const
{
    std::string raw = trim(text("d_t"));
    double scale = 1.0;
    if (!raw.empty() && raw.back() == 's')
    {
        raw.pop_back();
        scale = kSpeedOfLight;
    }
    const double v = parse_double("d_t", raw) * scale;
    if (!(v > 0.0))
    {
        throw ConfigError("key 'd_t' must be positive");
    }
    return v;
}

//---------------------------------------------------------------------------//

experiment::Variant parse_variant(const std::string& s)
{
    if (s == "satellite")
    {
        return experiment::Variant::SatelliteBoth;
    }
    if (s == "split")
    {
        return experiment::Variant::SplitGroundOrbit;
    }
    throw ConfigError("variant must be 'satellite' or 'split', got '" + s + "'");
}

experiment::Formalism parse_formalism(const std::string& s)
{
    if (s == "mode")
    {
        return experiment::Formalism::Mode;
    }
    if (s == "event")
    {
        return experiment::Formalism::Event;
    }
    throw ConfigError("formalism must be 'mode' or 'event', got '" + s + "'");
}

experiment::DeltaModel parse_delta_model(const std::string& s)
{
    if (s == "far_field")
    {
        return experiment::DeltaModel::FarField;
    }
    if (s == "exact")
    {
        return experiment::DeltaModel::Exact;
    }
    throw ConfigError("delta_model must be 'far_field' or 'exact', got '" + s + "'");
}

Scenario resolve(const RunConfig& cfg)
{
    using namespace gdecor::experiment;
    Scenario sc;
    const double mass = cfg.number("mass_length");
    if (!(mass >= 0.0))
    {
        throw ConfigError("key 'mass_length' must be non-negative");
    }
    sc.background = SchwarzschildBackground(mass);
    sc.smearing = EventSmearing::gaussian(cfg.d_t());
    sc.formalism = parse_formalism(cfg.text_or("formalism", "event"));
    sc.options.delta.model = parse_delta_model(cfg.text_or("delta_model", "far_field"));

    const std::string coeff = cfg.text_or("coefficients", "weak");
    if (coeff != "weak" && coeff != "exact")
    {
        throw ConfigError("coefficients must be 'weak' or 'exact'");
    }
    sc.options.coefficients = coeff == "weak"
                                  ? formalism::ParametricCoefficients::Weak
                                  : formalism::ParametricCoefficients::Exact;
    const std::string trunc = cfg.text_or("truncation", "leading");
    if (trunc != "leading" && trunc != "exact")
    {
        throw ConfigError("truncation must be 'leading' or 'exact'");
    }
    sc.options.truncation = trunc == "leading" ? formalism::Truncation::Leading
                                               : formalism::Truncation::Exact;

    // Spectra.
    const double k0 = positive(cfg, "k0", cfg.number_or("k0", 1.0e7));
    const double sigma_k = positive(cfg, "sigma_k", cfg.number_or("sigma_k", 1.0e3));
    try
    {
        sc.detector_spectrum = std::make_shared<const Spectrum>(
            cfg.has("spectrum_file")
                ? spectra::load_grid_spectrum(cfg.text("spectrum_file"))
                : Spectrum::gaussian(k0, sigma_k));
    }
    catch (const DomainError& e)
    {
        throw ConfigError(e.what());
    }
    auto pump = sc.detector_spectrum;
    if (cfg.has("pump_file"))
    {
        pump = std::make_shared<const Spectrum>(
            spectra::load_grid_spectrum(cfg.text("pump_file")));
    }

    // Source.
    std::string source = cfg.text_or("source", "");
    if (source.empty())
    {
        source = cfg.has("chi_max")     ? "parametric"
                 : cfg.has("alpha_max") ? "displacement"
                                        : "";
    }
    if (source.empty())
    {
        throw ConfigError("missing required key 'chi_max' (or 'alpha_max')");
    }
    const double phi_c = cfg.number_or("phi_c", 0.0);
    if (source == "parametric")
    {
        formalism::ParametricSource p{cfg.number("chi_max"), phi_c, pump};
        try
        {
            formalism::check_weak_regime(p);
        }
        catch (const RegimeError& e)
        {
            throw ConfigError(e.what());
        }
        sc.source = p;
    }
    else if (source == "displacement")
    {
        sc.source = formalism::DisplacementSource{
            {cfg.number("alpha_max"), 0.0}, phi_c, pump};
    }
    else if (source == "identity")
    {
        sc.source = formalism::IdentitySource{};
    }
    else
    {
        throw ConfigError("source must be parametric, displacement or identity");
    }

    // Layout.
    const Variant variant = parse_variant(cfg.text_or("variant", "satellite"));
    double x_m = 0.0;
    if (cfg.has("r_base"))
    {
        x_m = cfg.number("r_base");
    }
    else if (cfg.has("x_m"))
    {
        x_m = cfg.number("x_m");
    }
    else
    {
        throw ConfigError("missing required key 'r_base' (or 'x_m')");
    }
    double x_p = 0.0;
    if (cfg.has("h"))
    {
        x_p = x_m + cfg.number("h");
    }
    else if (cfg.has("x_p"))
    {
        x_p = cfg.number("x_p");
    }
    else
    {
        throw ConfigError("missing required key 'h' (or 'x_p')");
    }
    const double h = x_p - x_m;

    ExperimentLayout& l = sc.layout;
    if (variant == Variant::SatelliteBoth)
    {
        l = ExperimentLayout::satellite(
            x_m, h, cfg.number_or("x_d1", kGeostationaryRadius));
    }
    else
    {
        l = ExperimentLayout::split_ground_orbit(x_m, h);
        l.x_d1 = cfg.number_or("x_d1", l.x_d1);
    }
    l.x_d2 = cfg.number_or("x_d2", l.x_d2);
    l.t_d1 = cfg.number_or("t_d1", 0.0);
    l.t_d2 = cfg.number_or("t_d2", l.t_d1 + l.t_d2);
    l.source_radius = cfg.number_or("source_radius", l.source_radius);
    if (cfg.has("path_swap"))
    {
        l.path_swap = parse_bool("path_swap", cfg.text("path_swap"));
    }

    const std::string placement = cfg.text_or("placement", "auto");
    if (placement != "auto" && placement != "none")
    {
        throw ConfigError("placement must be 'auto' or 'none'");
    }
    try
    {
        l.validate(sc.background);
    }
    catch (const DomainError& e)
    {
        throw ConfigError(e.what());
    }
    if (placement == "auto")
    {
        sc.placement = place_detectors(l, sc.background, sc.source);
        l = sc.placement->layout;
    }
    return sc;
}

} // namespace gdecor::config

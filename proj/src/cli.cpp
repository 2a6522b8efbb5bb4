#include "gdecor/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "gdecor/errors.hpp"
#include "gdecor/fock_oracle.hpp"

namespace gdecor::cli {

namespace {

using config::RunConfig;
using experiment::CorrelationReport;
using experiment::ExperimentLayout;
using experiment::Formalism;
using experiment::SchwarzschildBackground;

double relative_gap(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

CorrelationReport predict(const config::Scenario& sc, Formalism f)
{
    return experiment::predict(sc.layout, sc.background, sc.source,
                               sc.detector_spectrum, sc.smearing, f,
                               sc.options);
}

void record(SuiteResult& suite, double gap, double tolerance)
{
    ++suite.checks;
    suite.worst = std::max(suite.worst, gap / tolerance);
    if (!(gap <= tolerance))
    {
        ++suite.failures;
        suite.passed = false;
    }
}

struct RandomLayout
{
    ExperimentLayout layout;
    double d_t = 0.0;
};

// A random layout, matched by placement and then optionally detuned.
RandomLayout random_layout(std::mt19937& rng,
                           const SchwarzschildBackground& bg,
                           const experiment::SourceModel& source,
                           bool detune)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r_base = 1e6 + 9e6 * unit(rng);
    const double h = 1e3 + 1e5 * unit(rng);
    ExperimentLayout l
        = unit(rng) < 0.5
              ? ExperimentLayout::satellite(r_base, h,
                                            r_base + h + 1e5 + 4e7 * unit(rng))
              : ExperimentLayout::split_ground_orbit(r_base, h);
    l = experiment::place_detectors(l, bg, source).layout;
    if (detune)
    {
        l.t_d2 += 2e-3 * (unit(rng) - 0.5);
    }
    return {l, 1e-5 + 1e-3 * unit(rng)};
}

SuiteResult flat_space_suite(std::uint32_t seed)
{
    SuiteResult suite{"flat_space_equivalence"};
    const double tol = 1e-12;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const SchwarzschildBackground bg(0.0);
    auto g = std::make_shared<const experiment::Spectrum>(
        experiment::Spectrum::gaussian(1e7, 1e3));

    for (int i = 0; i < 100; ++i)
    {
        const experiment::SourceModel sources[] = {
            formalism::DisplacementSource{{0.1 + unit(rng), 0.0}, 0.0, g},
            formalism::ParametricSource{0.01 + 0.19 * unit(rng), 0.0, g}};
        for (const auto& source : sources)
        {
            const auto rl = random_layout(rng, bg, source, i % 2 == 1);
            const auto smearing = experiment::EventSmearing::gaussian(rl.d_t);
            const auto mode = experiment::predict(rl.layout, bg, source, g,
                                                  smearing, Formalism::Mode);
            const auto event = experiment::predict(rl.layout, bg, source, g,
                                                   smearing, Formalism::Event);
            record(suite, relative_gap(mode.n1, event.n1), tol);
            record(suite, relative_gap(mode.n2, event.n2), tol);
            record(suite, relative_gap(mode.coincidence, event.coincidence), tol);
        }
    }
    return suite;
}

SuiteResult classical_suite(std::uint32_t seed, bool flip)
{
    SuiteResult suite{"classical_invariance"};
    const double tol = 1e-12;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto g = std::make_shared<const experiment::Spectrum>(
        experiment::Spectrum::gaussian(1e7, 1e3));
    experiment::PredictOptions opts;
    opts.delta.model = experiment::DeltaModel::Exact;
    opts.delta.flip_tau_mass = flip;

    for (int i = 0; i < 100; ++i)
    {
        const SchwarzschildBackground bg(1e-2 * unit(rng));
        const double alpha = 0.1 + unit(rng);
        const experiment::SourceModel source
            = formalism::DisplacementSource{{alpha, 0.0}, 0.0, g};
        const bool detune = i % 2 == 1;
        const auto rl = random_layout(rng, bg, source, detune);
        const auto smearing = experiment::EventSmearing::gaussian(rl.d_t);
        const auto mode = experiment::predict(rl.layout, bg, source, g,
                                              smearing, Formalism::Mode, opts);
        const auto event = experiment::predict(
            rl.layout, bg, source, g, smearing, Formalism::Event, opts);
        record(suite, relative_gap(mode.coincidence, event.coincidence), tol);
        if (!detune)
        {
            // Matched placement: C = |alpha_max|^4 up to the spectral
            // mismatch left by rounding the detector radius.
            record(suite, relative_gap(event.coincidence, std::pow(alpha, 4)),
                   1e-9);
        }
    }
    return suite;
}

SuiteResult entangled_suite(std::uint32_t seed, bool flip)
{
    SuiteResult suite{"entangled_decorrelation"};
    const double tol = 1e-6;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto g = std::make_shared<const experiment::Spectrum>(
        experiment::Spectrum::gaussian(1e7, 1e3));
    const double d_t = 6e-5;
    const auto smearing = experiment::EventSmearing::gaussian(d_t);
    const double r_base = 6.38e6;
    experiment::PredictOptions opts;
    opts.delta.model = experiment::DeltaModel::Exact;
    opts.delta.flip_tau_mass = flip;

    for (int i = 0; i < 40; ++i)
    {
        const SchwarzschildBackground bg(1e-3 + 9e-3 * unit(rng));
        const double chi = 0.1;
        const experiment::SourceModel source
            = formalism::ParametricSource{chi, 0.0, g};
        const double h = 1e3 + 5e4 * unit(rng);
        ExperimentLayout l
            = i % 2 == 0 ? ExperimentLayout::satellite(r_base, h)
                         : ExperimentLayout::split_ground_orbit(r_base, h);
        l = experiment::place_detectors(l, bg, source).layout;

        // Reference: the weak-field log formula with every ratio kept.
        const auto trace = experiment::geodesic_trace(
            l, bg, experiment::initial_time(l, bg));
        const double m = bg.mass_length();
        const double reference
            = m * (std::log(trace.x_i1 / trace.x_i2)
                   + std::log(l.x_d1 / l.x_d2)
                   + 2.0 * std::log(l.x_p / l.x_m));

        const auto event = experiment::predict(l, bg, source, g, smearing,
                                               Formalism::Event, opts);
        record(suite, relative_gap(event.delta, reference), tol);
        const double expected
            = chi * chi * std::exp(-reference * reference / (4.0 * d_t * d_t));
        record(suite, relative_gap(event.coincidence, expected), tol);
    }
    return suite;
}

SuiteResult proper_time_suite(std::uint32_t seed)
{
    SuiteResult suite{"proper_time_quadrature"};
    const double tol = 1e-12;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i)
    {
        const SchwarzschildBackground bg(1e-2 * unit(rng));
        const double r_lo = std::pow(10.0, 3.0 + 5.0 * unit(rng));
        const double width = std::pow(10.0, 7.0 * unit(rng));
        const geometry::RadialInterval iv{r_lo, r_lo + width};
        record(suite,
               relative_gap(geometry::proper_time_closed_form(iv, bg),
                            geometry::proper_time_quadrature(iv, bg)),
               tol);
    }
    return suite;
}

SuiteResult oracle_suite(const ValidateOptions& options)
{
    SuiteResult suite{"fock_oracle"};
    const double chi = 0.05;
    // Normalization and higher-order terms enter at relative O(chi^2).
    const double tol = 10.0 * chi * chi;
    std::mt19937 rng(options.seed);
    for (int i = 0; i < 24; ++i)
    {
        const Formalism f = i % 2 == 0 ? Formalism::Mode : Formalism::Event;
        const auto cfg = fock::random_oracle_config(
            rng, options.oracle_k_bins, options.oracle_omega_bins, f, chi);
        record(suite, relative_gap(fock::fock_oracle_coincidence(cfg),
                                   fock::expansion_coincidence(cfg)), tol);
    }
    return suite;
}

// Evenly spaced values, endpoints exact.
std::vector<double> linspace(double from, double to, int steps)
{
    std::vector<double> v(steps);
    for (int i = 0; i < steps; ++i)
    {
        v[i] = i == steps - 1 ? to
                              : from + (to - from) * double(i) / (steps - 1);
    }
    return v;
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out)
{
    out << text;
    if (cfg.has("output"))
    {
        std::ofstream file(cfg.text("output"));
        if (!file)
        {
            throw ConfigError("cannot write output file '" + cfg.text("output")
                              + "'");
        }
        file << text;
    }
}

} // namespace

const std::vector<std::string>& sweep_axes()
{
    static const std::vector<std::string> axes{
        "h", "d_t", "mass_length", "chi_max", "alpha_max", "x_p", "sigma_k",
        "k0"};
    return axes;
}

CorrelationReport cmd_predict(const RunConfig& cfg)
{
    const auto sc = config::resolve(cfg);
    return predict(sc, sc.formalism);
}

SweepTable cmd_sweep(const RunConfig& cfg)
{
    SweepTable table;
    table.axis = cfg.text("sweep_axis");
    const auto& axes = sweep_axes();
    if (std::find(axes.begin(), axes.end(), table.axis) == axes.end())
    {
        throw ConfigError("sweep_axis '" + table.axis + "' is not sweepable");
    }
    const double steps = cfg.number("sweep_steps");
    if (!(steps >= 2.0) || steps != std::floor(steps) || steps > 1e6)
    {
        throw ConfigError("sweep_steps must be an integer >= 2");
    }
    const auto values = linspace(cfg.number("sweep_from"),
                                 cfg.number("sweep_to"), int(steps));

    for (const auto& [key, value] : cfg.values())
    {
        if (key.rfind("sweep_", 0) != 0 && key != table.axis && key != "output"
            && key != "format")
        {
            table.metadata.push_back(key + "=" + value);
        }
    }
    for (double v : values)
    {
        RunConfig point = cfg;
        point.set(table.axis, report::format_number(v));
        table.rows.push_back({v, cmd_predict(point)});
    }
    return table;
}

double cmd_threshold(const RunConfig& cfg)
{
    const SchwarzschildBackground bg(cfg.number("mass_length"));
    const auto smearing = experiment::EventSmearing::gaussian(cfg.d_t());
    experiment::ThresholdOptions opts;
    opts.delta.model
        = config::parse_delta_model(cfg.text_or("delta_model", "far_field"));
    opts.detector_radius
        = cfg.number_or("x_d1", experiment::kGeostationaryRadius);
    const double r_base = cfg.has("r_base") ? cfg.number("r_base")
                                            : cfg.number("x_m");
    return experiment::threshold_height(
        bg, smearing, config::parse_variant(cfg.text_or("variant", "satellite")),
        r_base, opts);
}

std::pair<CorrelationReport, CorrelationReport>
cmd_compare(const RunConfig& cfg)
{
    const auto sc = config::resolve(cfg);
    return {predict(sc, Formalism::Mode), predict(sc, Formalism::Event)};
}

bool ValidationSummary::passed() const
{
    return std::all_of(suites.begin(), suites.end(),
                       [](const SuiteResult& s) { return s.passed; });
}

nlohmann::json ValidationSummary::to_json() const
{
    nlohmann::json out{{"schema", kValidateSchema}, {"passed", passed()}};
    auto& list = out["suites"] = nlohmann::json::array();
    for (const auto& s : suites)
    {
        list.push_back({{"name", s.name},
                        {"passed", s.passed},
                        {"checks", s.checks},
                        {"failures", s.failures},
                        {"worst_gap_over_tolerance", s.worst}});
    }
    return out;
}

ValidationSummary cmd_validate(const ValidateOptions& options)
{
    ValidationSummary summary;
    const bool flip = options.inject_mass_sign_flip;
    summary.suites.push_back(flat_space_suite(options.seed));
    summary.suites.push_back(classical_suite(options.seed + 1, flip));
    summary.suites.push_back(entangled_suite(options.seed + 2, flip));
    summary.suites.push_back(proper_time_suite(options.seed + 3));
    summary.suites.push_back(oracle_suite(options));
    return summary;
}

//---------------------------------------------------------------------------//

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Mode and event operator predictions for gravitational "
                 "decorrelation experiments"};
    app.require_subcommand(1);
    // "--h" is the height key, so help has no short form.
    app.set_help_flag("--help", "Print this help message and exit");

    const std::vector<std::string> commands{"predict", "sweep", "threshold",
                                            "compare", "validate"};
    std::map<std::string, std::string> config_path;
    std::map<std::string, std::map<std::string, std::string>> overrides;
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : commands)
    {
        auto* sub = app.add_subcommand(name);
        subs[name] = sub;
        sub->add_option("-c,--config", config_path[name],
                        "key=value configuration file");
        for (const auto& key : config::known_keys())
        {
            sub->add_option("--" + key, overrides[name][key])
                ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        }
    }
    subs["predict"]->description("Single-point prediction as a JSON report");
    subs["sweep"]->description("Predictions along one axis, CSV or JSON");
    subs["threshold"]->description("Height at which delta reaches 2 d_t");
    subs["compare"]->description("Mode and event predictions side by side");
    subs["validate"]->description("Run the invariant suites");
    bool flip = false;
    subs["validate"]->add_flag("--inject-mass-sign-flip", flip,
                               "Fault injection: flip the sign of M in tau");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try
    {
        std::string name;
        for (const auto& [n, sub] : subs)
        {
            if (sub->parsed())
            {
                name = n;
            }
        }
        RunConfig cfg = config_path[name].empty()
                            ? RunConfig{}
                            : RunConfig::load(config_path[name]);
        for (const auto& key : config::known_keys())
        {
            if (subs[name]->get_option("--" + key)->count() > 0)
            {
                cfg.set(key, overrides[name][key]);
            }
        }

        if (name == "predict")
        {
            emit(report::to_json(cmd_predict(cfg)).dump(2) + "\n", cfg, out);
        }
        else if (name == "sweep")
        {
            const auto table = cmd_sweep(cfg);
            const auto format = cfg.text_or("format", "csv");
            if (format == "csv")
            {
                emit(report::sweep_csv(table.axis, table.metadata, table.rows),
                     cfg, out);
            }
            else if (format == "json")
            {
                emit(report::sweep_json(table.axis, table.rows).dump(2) + "\n",
                     cfg, out);
            }
            else
            {
                throw ConfigError("format must be 'csv' or 'json'");
            }
        }
        else if (name == "threshold")
        {
            const double h = cmd_threshold(cfg);
            emit("h* = " + report::format_number(h) + " m ("
                     + report::format_number(h / 1e3) + " km)\n",
                 cfg, out);
        }
        else if (name == "compare")
        {
            const auto [mode, event] = cmd_compare(cfg);
            const nlohmann::json j{{"mode", report::to_json(mode)},
                                   {"event", report::to_json(event)}};
            emit(j.dump(2) + "\n", cfg, out);
        }
        else
        {
            ValidateOptions opts;
            opts.inject_mass_sign_flip = flip;
            opts.oracle_k_bins = std::size_t(
                cfg.number_or("oracle_k_bins", double(opts.oracle_k_bins)));
            opts.oracle_omega_bins = std::size_t(cfg.number_or(
                "oracle_omega_bins", double(opts.oracle_omega_bins)));
            opts.seed = std::uint32_t(cfg.number_or("seed", opts.seed));
            const auto summary = cmd_validate(opts);
            out << summary.to_json().dump(2) << "\n";
            return summary.passed() ? 0 : 1;
        }
        return 0;
    }
    catch (const ConfigError& e)
    {
        err << "config error: " << e.what() << "\n";
        return 2;
    }
    catch (const RegimeError& e)
    {
        err << "config error: " << e.what() << "\n";
        return 2;
    }
    catch (const DomainError& e)
    {
        err << "config error: " << e.what() << "\n";
        return 2;
    }
    catch (const Error& e)
    {
        err << "numeric error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace gdecor::cli

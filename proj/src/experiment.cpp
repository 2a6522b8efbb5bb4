#include "gdecor/experiment.hpp"

#include <cmath>
#include <sstream>
#include <tuple>
#include <type_traits>
#include <variant>

#include <boost/math/tools/toms748_solve.hpp>

#include "gdecor/errors.hpp"

namespace gdecor::experiment {

namespace {

constexpr std::uintmax_t kMaxSolverIterations = 200;
constexpr double kPlacementBracketMasses = 1e4;

// Shell-frame excess for a signed mass (the fault-injection path needs M < 0).
double excess(double r, double m)
{
    if (m == 0.0)
    {
        return 0.0;
    }
    const double root = std::sqrt(r * (r - 2.0 * m));
    return -2.0 * m * r / (root + r)
           + 2.0 * m * std::log(std::sqrt(r) + std::sqrt(r - 2.0 * m));
}

// Contribution of the reflector loops to phi2_minus - phi1_minus.
double loop_phase_difference(const ExperimentLayout& l, double m)
{
    if (l.path_swap)
    {
        return 0.0;
    }
    return 2.0 * (l.x_p - l.x_m) + 4.0 * m * std::log(l.x_p / l.x_m);
}

// Sum over reflectors of 2 r + 4 M ln r for mode j's path.
double loop_phase(const ExperimentLayout& l, double m, int mode)
{
    auto leg = [m](double r) { return 2.0 * r + 4.0 * m * std::log(r); };
    if (l.path_swap)
    {
        return leg(l.x_m) + leg(l.x_p);
    }
    return mode == 1 ? leg(l.x_m) : leg(l.x_p);
}

bool is_parametric(const SourceModel& s)
{
    return std::holds_alternative<formalism::ParametricSource>(s);
}

template<class F>
double solve_bracketed(F f, double lo, double hi, const char* what)
{
    const double flo = f(lo);
    if (flo == 0.0)
    {
        return lo;
    }
    const double fhi = f(hi);
    if (fhi == 0.0)
    {
        return hi;
    }
    if ((flo < 0.0) == (fhi < 0.0))
    {
        std::ostringstream msg;
        msg << what << ": no sign change on [" << lo << ", " << hi << "]";
        throw ConvergenceError(msg.str());
    }
    std::uintmax_t iterations = kMaxSolverIterations;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(),
        iterations);
    if (iterations >= kMaxSolverIterations)
    {
        throw ConvergenceError(std::string(what) + ": iteration cap reached");
    }
    return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

void require(bool ok, const char* what)
{
    if (!ok)
    {
        throw DomainError(std::string("invalid layout: ") + what);
    }
}

} // namespace

const char* to_string(Variant v)
{
    return v == Variant::SatelliteBoth ? "satellite" : "split";
}

const char* to_string(DeltaModel m)
{
    return m == DeltaModel::FarField ? "far_field" : "exact";
}

ExperimentLayout
ExperimentLayout::satellite(double r_base, double h, double detector_radius)
{
    ExperimentLayout l;
    l.variant = Variant::SatelliteBoth;
    l.x_m = r_base;
    l.x_p = r_base + h;
    l.x_d1 = detector_radius;
    l.x_d2 = detector_radius + 2.0 * h;
    l.source_radius = detector_radius;
    return l;
}

ExperimentLayout ExperimentLayout::split_ground_orbit(double r_base, double h)
{
    ExperimentLayout l;
    l.variant = Variant::SplitGroundOrbit;
    l.x_m = r_base;
    l.x_p = r_base + h;
    l.x_d1 = l.x_m;
    l.x_d2 = l.x_p;
    l.t_d2 = -h;
    // The source sits just above the splitter.
    l.source_radius = l.x_p + 1.0;
    return l;
}

void ExperimentLayout::validate(const SchwarzschildBackground& bg) const
{
    for (double v : {x_m, x_p, x_d1, x_d2, t_d1, t_d2, source_radius})
    {
        require(std::isfinite(v), "non-finite value");
    }
    const double horizon = bg.horizon();
    for (double r : {x_m, x_p, x_d1, x_d2, source_radius})
    {
        require(r > 0.0 && r > horizon, "radius not outside the horizon");
    }
    require(x_m <= x_p, "mirror must lie below the polarizer");
    if (variant == Variant::SatelliteBoth)
    {
        require(x_p <= x_d1 && x_p <= x_d2,
                "detectors must lie above the polarizer");
    }
    else
    {
        require(x_d1 >= x_m && x_d2 >= x_p,
                "detectors must not lie below their reflectors");
    }
    require(source_radius >= x_p, "source must lie above the polarizer");
}

BoundaryPhases boundary_phases(const ExperimentLayout& layout,
                               const SchwarzschildBackground& bg)
{
    layout.validate(bg);
    const double m = bg.mass_length();
    BoundaryPhases p;
    p.phi1_plus = layout.t_d1 - geometry::tortoise(layout.x_d1, bg);
    p.phi2_plus = layout.t_d2 - geometry::tortoise(layout.x_d2, bg);
    p.phi1_minus = loop_phase(layout, m, 1) + p.phi1_plus;
    p.phi2_minus = loop_phase(layout, m, 2) + p.phi2_plus;
    return p;
}

double modal_phase_mismatch(const ExperimentLayout& layout,
                            const SchwarzschildBackground& bg)
{
    layout.validate(bg);
    const double m = bg.mass_length();
    return loop_phase_difference(layout, m) + (layout.t_d2 - layout.t_d1)
           - (layout.x_d2 - layout.x_d1)
           - 2.0 * m * std::log(layout.x_d2 / layout.x_d1);
}

double initial_time(const ExperimentLayout& layout,
                    const SchwarzschildBackground& bg)
{
    return boundary_phases(layout, bg).phi1_minus - layout.source_radius;
}

GeodesicTrace geodesic_trace(const ExperimentLayout& layout,
                             const SchwarzschildBackground& bg,
                             double t_i)
{
    if (layout.path_swap)
    {
        throw UnsupportedError(
            "geodesic_trace describes the unswapped return paths");
    }
    const BoundaryPhases phases = boundary_phases(layout, bg);
    GeodesicTrace tr;
    tr.t_i = t_i;
    tr.x_i1 = -t_i + phases.phi1_minus;
    tr.x_i2 = tr.x_i1 + modal_phase_mismatch(layout, bg);
    if (!(tr.x_i1 >= layout.x_m) || !(tr.x_i2 >= layout.x_p))
    {
        std::ostringstream msg;
        msg << "t_i = " << t_i << " puts the initial points (" << tr.x_i1
            << ", " << tr.x_i2 << ") inside the reflectors";
        throw DomainError(msg.str());
    }

    using geometry::proper_time_radial;
    tr.tau_1 = proper_time_radial({layout.x_m, layout.x_d1}, bg)
               + proper_time_radial({layout.x_m, tr.x_i1}, bg);
    tr.tau_2 = proper_time_radial({layout.x_p, layout.x_d2}, bg)
               + proper_time_radial({layout.x_p, tr.x_i2}, bg);

    const double m = bg.mass_length();
    tr.tau_1_approx
        = -t_i + layout.t_d1
          - m * std::log(layout.x_d1 * tr.x_i1 / (layout.x_m * layout.x_m));
    tr.tau_2_approx
        = -t_i + layout.t_d2
          - m * std::log(layout.x_d2 * tr.x_i2 / (layout.x_p * layout.x_p));
    return tr;
}

double delta_offset(const ExperimentLayout& layout,
                    const SchwarzschildBackground& bg,
                    double t_i,
                    DeltaOptions options)
{
    const BoundaryPhases phases = boundary_phases(layout, bg);
    const double mismatch = modal_phase_mismatch(layout, bg);
    const double x_i1 = -t_i + phases.phi1_minus;
    const double x_i2 = x_i1 + mismatch;
    if (!(x_i1 >= layout.x_m) || !(x_i2 >= layout.x_p))
    {
        std::ostringstream msg;
        msg << "t_i = " << t_i << " puts the initial points (" << x_i1 << ", "
            << x_i2 << ") inside the reflectors";
        throw DomainError(msg.str());
    }

    const double m = bg.mass_length();
    if (m == 0.0)
    {
        return 0.0;
    }
    const double m_tau = options.flip_tau_mass ? -m : m;

    if (options.model == DeltaModel::FarField)
    {
        double log_ratio = std::log(x_i1 / x_i2);
        if (layout.variant != Variant::SatelliteBoth)
        {
            log_ratio += std::log(layout.x_d1 / layout.x_d2);
        }
        if (!layout.path_swap)
        {
            log_ratio += 2.0 * std::log(layout.x_p / layout.x_m);
        }
        return m_tau * log_ratio;
    }

    // (t_d1 - tau_1) - (t_d2 - tau_2) with the flat parts cancelled:
    // modal-phase logs minus the shell-frame excesses along both paths.
    double loops = 0.0;
    if (!layout.path_swap)
    {
        loops = 4.0 * m * std::log(layout.x_p / layout.x_m)
                + 2.0 * excess(layout.x_m, m_tau)
                - 2.0 * excess(layout.x_p, m_tau);
    }
    const double stations
        = -2.0 * m * std::log(layout.x_d2 / layout.x_d1)
          - (excess(layout.x_d1, m_tau) - excess(layout.x_d2, m_tau))
          - (excess(x_i1, m_tau) - excess(x_i2, m_tau));
    return loops + stations;
}

double delta_offset(const ExperimentLayout& layout,
                    const SchwarzschildBackground& bg,
                    DeltaOptions options)
{
    return delta_offset(layout, bg, initial_time(layout, bg), options);
}

double delta_small_height(Variant variant,
                          double mass_length,
                          double h,
                          double r_base)
{
    const double factor = variant == Variant::SatelliteBoth ? 2.0 : 1.0;
    return factor * mass_length * h / r_base;
}

//---------------------------------------------------------------------------//

double placement_residual(const ExperimentLayout& layout,
                          const SchwarzschildBackground& bg,
                          const SourceModel& source,
                          PlacementRule rule,
                          double solved_value)
{
    const double m = bg.mass_length();
    const double loops = loop_phase_difference(layout, m);
    if (layout.variant == Variant::SatelliteBoth)
    {
        const double s = solved_value;
        if (rule == PlacementRule::FarField && is_parametric(source))
        {
            const double printed_loops
                = layout.path_swap
                      ? 0.0
                      : 2.0 * (layout.x_p - layout.x_m
                               + 2.0 * m * std::log(layout.x_p / layout.x_m));
            return printed_loops - s;
        }
        return loops - s - 2.0 * m * std::log1p(s / layout.x_d1);
    }
    const double dt = solved_value;
    return loops + dt - (layout.x_d2 - layout.x_d1)
           - 2.0 * m * std::log(layout.x_d2 / layout.x_d1);
}

Placement place_detectors(const ExperimentLayout& layout,
                          const SchwarzschildBackground& bg,
                          const SourceModel& source,
                          PlacementRule rule)
{
    layout.validate(bg);
    const double m = bg.mass_length();
    auto f = [&](double v) {
        return placement_residual(layout, bg, source, rule, v);
    };

    const double flat_loops
        = layout.path_swap ? 0.0 : 2.0 * (layout.x_p - layout.x_m);
    const double flat = layout.variant == Variant::SatelliteBoth
                            ? flat_loops
                            : (layout.x_d2 - layout.x_d1) - flat_loops;
    const double half_width = kPlacementBracketMasses * m;

    Placement out;
    out.layout = layout;
    out.solved_value
        = half_width == 0.0
              ? flat
              : solve_bracketed(f, flat - half_width, flat + half_width,
                                "detector placement");
    out.residual = f(out.solved_value);

    if (layout.variant == Variant::SatelliteBoth)
    {
        out.layout.t_d2 = out.layout.t_d1;
        out.layout.x_d2 = out.layout.x_d1 + out.solved_value;
    }
    else
    {
        out.layout.t_d2 = out.layout.t_d1 + out.solved_value;
    }
    out.layout.validate(bg);
    return out;
}

//---------------------------------------------------------------------------//

CorrelationReport predict(const ExperimentLayout& layout,
                          const SchwarzschildBackground& bg,
                          const SourceModel& source,
                          std::shared_ptr<const Spectrum> g,
                          const EventSmearing& smearing,
                          Formalism formalism,
                          PredictOptions options)
{
    using namespace gdecor::formalism;
    if (!g)
    {
        throw DomainError("predict needs a detector spectrum");
    }
    const double mismatch = modal_phase_mismatch(layout, bg);
    const double delta = delta_offset(layout, bg, options.delta);

    // Phases measured from mode 1's source-plane phase and event phase.
    auto x1 = HeisenbergExpansion::input_field({1}, g, 0.0, 0.0);
    auto x2 = HeisenbergExpansion::input_field({2}, g, mismatch, -delta);

    CorrelationReport report;
    report.truncation_note = "no source: vacuum";
    std::visit(
        [&](const auto& src) {
            using T = std::decay_t<decltype(src)>;
            if constexpr (std::is_same_v<T, DisplacementSource>)
            {
                x1 = apply_displacement(x1, src, *g, 0.0);
                x2 = apply_displacement(x2, src, *g, mismatch);
                report.truncation_note = "exact: c-number displacements";
            }
            else if constexpr (std::is_same_v<T, ParametricSource>)
            {
                if (!src.pump)
                {
                    throw DomainError("parametric source has no pump spectrum");
                }
                const ChiOverlaps chi{
                    spectra::overlap_chi(*g, *src.pump, -src.phi_c, src.chi_max),
                    spectra::overlap_chi(
                        *g, *src.pump, mismatch - src.phi_c, src.chi_max)};
                std::tie(x1, x2)
                    = apply_parametric(x1, x2, src, chi, options.coefficients);
                report.truncation_note
                    = options.truncation == Truncation::Leading
                          ? "leading order in chi; O(chi^4) terms dropped"
                          : "all contractions of the affine expansion";
            }
        },
        source);

    const ContractionContext ctx{formalism, smearing};
    report.n1 = vacuum_singles(x1, ctx);
    report.n2 = vacuum_singles(x2, ctx);
    report.coincidence = vacuum_coincidence(x1, x2, ctx, options.truncation);
    report.delta = delta;
    report.smearing_factor = formalism == Formalism::Event
                                 ? spectra::smearing_factor(smearing, delta)
                                 : 1.0;
    report.visibility = report.n1 > 0.0 && report.n2 > 0.0
                            ? report.coincidence / std::sqrt(report.n1 * report.n2)
                            : 0.0;
    report.formalism = formalism;
    return report;
}

double threshold_height(const SchwarzschildBackground& bg,
                        const EventSmearing& smearing,
                        Variant variant,
                        double r_base,
                        ThresholdOptions options)
{
    if (bg.flat())
    {
        throw ConvergenceError("no decorrelation threshold in flat space");
    }
    const double target = 2.0 * smearing.d_t();
    const SourceModel probe = formalism::IdentitySource{};

    auto layout_at = [&](double h) {
        ExperimentLayout l
            = variant == Variant::SatelliteBoth
                  ? ExperimentLayout::satellite(r_base, h,
                                                options.detector_radius)
                  : ExperimentLayout::split_ground_orbit(r_base, h);
        return place_detectors(l, bg, probe).layout;
    };
    auto f = [&](double h) {
        return std::abs(delta_offset(layout_at(h), bg, options.delta)) - target;
    };

    const double first_order
        = target * r_base
          / ((variant == Variant::SatelliteBoth ? 2.0 : 1.0) * bg.mass_length());
    double hi = 2.0 * first_order;
    const double h_cap = variant == Variant::SatelliteBoth
                             ? 0.5 * (options.detector_radius - r_base)
                             : 1e3 * r_base;
    while (f(hi) < 0.0)
    {
        hi *= 2.0;
        if (hi > h_cap)
        {
            throw ConvergenceError("threshold height beyond the layout range");
        }
    }
    return solve_bracketed(f, 0.0, hi, "threshold height");
}

} // namespace gdecor::experiment

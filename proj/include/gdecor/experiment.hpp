#pragma once

#include <memory>
#include <string>

#include "gdecor/formalism.hpp"
#include "gdecor/geometry.hpp"
#include "gdecor/spectra.hpp"

namespace gdecor::experiment {

using formalism::Formalism;
using formalism::SourceModel;
using geometry::SchwarzschildBackground;
using spectra::EventSmearing;
using spectra::Spectrum;

/// Radius of geostationary orbit, used as the default far-field station.
inline constexpr double kGeostationaryRadius = 4.2164e7;

enum class Variant
{
    SatelliteBoth,    ///< source and both detectors far above the body
    SplitGroundOrbit, ///< detector 1 at the mirror, detector 2 at the splitter
};

const char* to_string(Variant v);

/*!
 * Radial positions and detection times of the correlation experiment.
 *
 * Mode 1 passes the polarizing splitter at x_p, reflects from the mirror at
 * x_m and is detected at (t_d1, x_d1); mode 2 reflects at x_p and is
 * detected at (t_d2, x_d2). source_radius fixes the initial time: it is
 * where mode 1 sits at t_i. With path_swap set, each mode is resent along
 * the other's return path before detection.
 */
struct ExperimentLayout
{
    Variant variant = Variant::SatelliteBoth;
    double x_m = 0.0;
    double x_p = 0.0;
    double x_d1 = 0.0;
    double x_d2 = 0.0;
    double t_d1 = 0.0;
    double t_d2 = 0.0;
    double source_radius = 0.0;
    bool path_swap = false;

    /// Reflectors at r_base and r_base + h, detectors at the given radius.
    static ExperimentLayout satellite(double r_base,
                                      double h,
                                      double detector_radius
                                      = kGeostationaryRadius);
    /// Mirror and detector 1 at r_base, splitter and detector 2 at r_base+h.
    static ExperimentLayout split_ground_orbit(double r_base, double h);

    /// Throws DomainError if the layout is inconsistent with bg.
    void validate(const SchwarzschildBackground& bg) const;
};

struct BoundaryPhases
{
    double phi1_minus = 0.0;
    double phi2_minus = 0.0;
    double phi1_plus = 0.0;
    double phi2_plus = 0.0;
};

BoundaryPhases boundary_phases(const ExperimentLayout& layout,
                               const SchwarzschildBackground& bg);

/*!
 * phi2_minus - phi1_minus, evaluated in grouped form so that the large
 * radii cancel analytically. Zero means the two modes' modal functions are
 * matched at the source.
 */
double modal_phase_mismatch(const ExperimentLayout& layout,
                            const SchwarzschildBackground& bg);

struct GeodesicTrace
{
    double t_i = 0.0;
    double x_i1 = 0.0;
    double x_i2 = 0.0;
    double tau_1 = 0.0;
    double tau_2 = 0.0;
    /// Weak-field approximations -t_i + t_d - M ln(x_d x_i / x_reflector^2).
    double tau_1_approx = 0.0;
    double tau_2_approx = 0.0;
};

/// Initial time that puts mode 1 at layout.source_radius.
double initial_time(const ExperimentLayout& layout,
                    const SchwarzschildBackground& bg);

GeodesicTrace geodesic_trace(const ExperimentLayout& layout,
                             const SchwarzschildBackground& bg,
                             double t_i);

enum class DeltaModel
{
    /*!
     * The closed log expression M ln(x_d1 x_i1 x_p^2 / (x_d2 x_i2 x_m^2)),
     * with far-field stations treated as flat: for SatelliteBoth the
     * detector ratio is dropped, leaving 2M ln(x_p/x_m) once matched.
     */
    FarField,
    /// Difference of the exact shell-frame propagation times.
    Exact,
};

const char* to_string(DeltaModel m);

struct DeltaOptions
{
    DeltaModel model = DeltaModel::FarField;
    /// Fault injection for validation: flip the sign of M in tau only.
    bool flip_tau_mass = false;
};

/// Event-phase offset (t_d1 - tau_1) - (t_d2 - tau_2) for a given t_i.
double delta_offset(const ExperimentLayout& layout,
                    const SchwarzschildBackground& bg,
                    double t_i,
                    DeltaOptions options = {});

/// delta_offset at the layout's own initial time.
double delta_offset(const ExperimentLayout& layout,
                    const SchwarzschildBackground& bg,
                    DeltaOptions options = {});

/// The small-height form 2 M h / r_e (SatelliteBoth) or M h / r_e.
double delta_small_height(Variant variant,
                          double mass_length,
                          double h,
                          double r_base);

enum class PlacementRule
{
    /// Solve phi1_minus = phi2_minus exactly (both source types).
    ModalPhase,
    /*!
     * The far-field relations as printed: classical sources use the modal
     * relation, entangled sources 2(x_p - x_m + 2M ln(x_p/x_m)) = x_d2 - x_d1.
     */
    FarField,
};

struct Placement
{
    ExperimentLayout layout;
    /// x_d2 - x_d1 (SatelliteBoth) or t_d2 - t_d1 (SplitGroundOrbit).
    double solved_value = 0.0;
    /// Matching-condition residual at solved_value, in meters.
    double residual = 0.0;
};

/// Moves detector 2 (or its detection time) to maximize the coincidences.
Placement place_detectors(const ExperimentLayout& layout,
                          const SchwarzschildBackground& bg,
                          const SourceModel& source,
                          PlacementRule rule = PlacementRule::ModalPhase);

/// Residual of the matching condition for a given solved value.
double placement_residual(const ExperimentLayout& layout,
                          const SchwarzschildBackground& bg,
                          const SourceModel& source,
                          PlacementRule rule,
                          double solved_value);

struct CorrelationReport
{
    double n1 = 0.0;
    double n2 = 0.0;
    double coincidence = 0.0;
    double delta = 0.0;
    double smearing_factor = 1.0;
    /// C / sqrt(n1 n2); 1 for perfectly correlated pairs at leading order.
    double visibility = 0.0;
    Formalism formalism = Formalism::Mode;
    std::string truncation_note;
};

struct PredictOptions
{
    DeltaOptions delta;
    formalism::ParametricCoefficients coefficients
        = formalism::ParametricCoefficients::Weak;
    formalism::Truncation truncation = formalism::Truncation::Leading;
};

/*!
 * Singles and coincidence rates of the two detectors.
 *
 * Spectral phases are measured from mode 1's source-plane phase phi1_minus,
 * so a source phase phi_c of zero is a pump aligned with mode 1. The
 * detector modes share the spectrum g.
 */
CorrelationReport predict(const ExperimentLayout& layout,
                          const SchwarzschildBackground& bg,
                          const SourceModel& source,
                          std::shared_ptr<const Spectrum> g,
                          const EventSmearing& smearing,
                          Formalism formalism,
                          PredictOptions options = {});

struct ThresholdOptions
{
    DeltaOptions delta;
    double detector_radius = kGeostationaryRadius;
};

/// Height h at which delta reaches 2 d_t.
double threshold_height(const SchwarzschildBackground& bg,
                        const EventSmearing& smearing,
                        Variant variant,
                        double r_base,
                        ThresholdOptions options = {});

} // namespace gdecor::experiment

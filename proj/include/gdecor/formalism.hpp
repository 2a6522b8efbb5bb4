#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "gdecor/spectra.hpp"

namespace gdecor::formalism {

using complex = std::complex<double>;
using spectra::EventSmearing;
using spectra::Spectrum;

/// Standard global mode operators, or localized event operators.
enum class Formalism
{
    Mode,
    Event,
};

const char* to_string(Formalism f);

/// Identifies an input field (e.g. polarization 1 or 2).
struct InputLabel
{
    int mode_id = 0;

    friend bool operator==(InputLabel, InputLabel) = default;
};

enum class OperatorKind
{
    Annihilation,
    Creation,
};

/*!
 * One smeared input operator times a coefficient.
 *
 * The operator is  int dk S(k) e^{i k spectral_phase}
 *                  int dOmega J(Omega) e^{i Omega event_phase} a_{mode,k,Omega}
 * (or its adjoint for creation terms). Only phase differences between terms
 * of the same mode are observable, so callers may measure phases from any
 * per-mode reference.
 */
struct Term
{
    InputLabel label;
    OperatorKind kind = OperatorKind::Annihilation;
    std::shared_ptr<const Spectrum> spectrum;
    double spectral_phase = 0.0;
    double event_phase = 0.0;
    complex coefficient{1.0, 0.0};
};

/// Affine Heisenberg-picture expansion: displacement + sum of terms.
struct HeisenbergExpansion
{
    std::vector<Term> terms;
    complex displacement{0.0, 0.0};

    /// The bare input field of one mode, as seen by a detector.
    static HeisenbergExpansion input_field(InputLabel label,
                                           std::shared_ptr<const Spectrum> g,
                                           double spectral_phase,
                                           double event_phase);
};

//---------------------------------------------------------------------------//
// Sources
//---------------------------------------------------------------------------//

struct IdentitySource
{
};

struct DisplacementSource
{
    complex alpha_max{0.0, 0.0};
    double phi_c = 0.0;
    std::shared_ptr<const Spectrum> pump;
};

/// Largest chi_max accepted; beyond it the leading-order results are unsafe.
inline constexpr double kMaxWeakChi = 0.2;

struct ParametricSource
{
    double chi_max = 0.0;
    double phi_c = 0.0;
    std::shared_ptr<const Spectrum> pump;
};

using SourceModel
    = std::variant<IdentitySource, DisplacementSource, ParametricSource>;

/// Throws RegimeError unless 0 <= chi_max <= kMaxWeakChi.
void check_weak_regime(const ParametricSource& src);

/// How the parametric Bogoliubov coefficients are formed.
enum class ParametricCoefficients
{
    Exact, ///< cosh(chi_max), sinh(chi_j)
    Weak,  ///< 1, chi_j
};

//---------------------------------------------------------------------------//
// Unitaries in the Heisenberg picture
//---------------------------------------------------------------------------//

/// Adds the displacement seen by detector mode g from the classical pulse.
HeisenbergExpansion apply_displacement(const HeisenbergExpansion& x,
                                       const DisplacementSource& src,
                                       const Spectrum& g,
                                       double phase_plus);

struct ChiOverlaps
{
    complex chi_1{0.0, 0.0};
    complex chi_2{0.0, 0.0};
};

/*!
 * Two-mode parametric evolution of a pair of bare input fields.
 *
 * Each output gains a creation term on the partner mode with the pump's
 * spectrum and phase phi_c. The partner inherits the event phase of the
 * field it is attached to, which is how the pump ties the two modes'
 * local histories together under the event formalism.
 */
std::pair<HeisenbergExpansion, HeisenbergExpansion>
apply_parametric(const HeisenbergExpansion& x1,
                 const HeisenbergExpansion& x2,
                 const ParametricSource& src,
                 ChiOverlaps overlaps,
                 ParametricCoefficients coefficients
                 = ParametricCoefficients::Exact);

//---------------------------------------------------------------------------//
// Vacuum expectation values
//---------------------------------------------------------------------------//

/// Contraction rules: k-overlap always, Omega-overlap under Event only.
struct ContractionContext
{
    Formalism formalism = Formalism::Mode;
    EventSmearing smearing = EventSmearing::gaussian(1.0);

    /// [A, B^dagger] for two terms (their kinds are ignored).
    complex commutator(const Term& a, const Term& b) const;
};

enum class Truncation
{
    Leading, ///< drop the two-photon (pair-squared) component
    Exact,   ///< every contraction of the affine expansions
};

/// <0| x^dagger x |0>.
double vacuum_singles(const HeisenbergExpansion& x,
                      const ContractionContext& ctx);

/// <0| x1^dagger x2^dagger x2 x1 |0>.
double vacuum_coincidence(const HeisenbergExpansion& x1,
                          const HeisenbergExpansion& x2,
                          const ContractionContext& ctx,
                          Truncation truncation = Truncation::Leading);

} // namespace gdecor::formalism

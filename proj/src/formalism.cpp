#include "gdecor/formalism.hpp"

#include <cmath>
#include <sstream>

#include "gdecor/errors.hpp"

namespace gdecor::formalism {

namespace {

struct Split
{
    std::vector<const Term*> annihilators;
    std::vector<const Term*> creators;
};

Split split(const HeisenbergExpansion& x)
{
    Split s;
    for (const auto& t : x.terms)
    {
        if (!t.spectrum)
        {
            throw UnsupportedError("expansion term without a spectrum");
        }
        (t.kind == OperatorKind::Annihilation ? s.annihilators : s.creators)
            .push_back(&t);
    }
    return s;
}

const Term& bare_annihilator(const HeisenbergExpansion& x, const char* which)
{
    const Split s = split(x);
    if (s.annihilators.size() != 1 || !s.creators.empty())
    {
        std::ostringstream msg;
        msg << "parametric evolution needs a bare input field for " << which
            << " (got " << s.annihilators.size() << " annihilation and "
            << s.creators.size() << " creation terms)";
        throw UnsupportedError(msg.str());
    }
    return *s.annihilators.front();
}

// Norm squared of sum_m f_m B_m^dagger |0>.
double one_photon_norm(const std::vector<std::pair<complex, const Term*>>& v,
                       const ContractionContext& ctx)
{
    complex total{0.0, 0.0};
    for (const auto& [fa, a] : v)
    {
        for (const auto& [fb, b] : v)
        {
            total += std::conj(fa) * fb * ctx.commutator(*a, *b);
        }
    }
    return total.real();
}

} // namespace

const char* to_string(Formalism f)
{
    return f == Formalism::Mode ? "mode" : "event";
}

HeisenbergExpansion
HeisenbergExpansion::input_field(InputLabel label,
                                 std::shared_ptr<const Spectrum> g,
                                 double spectral_phase,
                                 double event_phase)
{
    HeisenbergExpansion x;
    x.terms.push_back(Term{label,
                           OperatorKind::Annihilation,
                           std::move(g),
                           spectral_phase,
                           event_phase,
                           {1.0, 0.0}});
    return x;
}

void check_weak_regime(const ParametricSource& src)
{
    if (!(src.chi_max >= 0.0) || src.chi_max > kMaxWeakChi)
    {
        std::ostringstream msg;
        msg << "chi_max = " << src.chi_max
            << " is outside the weak parametric regime [0, " << kMaxWeakChi
            << "]";
        throw RegimeError(msg.str());
    }
}

HeisenbergExpansion apply_displacement(const HeisenbergExpansion& x,
                                       const DisplacementSource& src,
                                       const Spectrum& g,
                                       double phase_plus)
{
    if (!src.pump)
    {
        throw DomainError("displacement source has no pump spectrum");
    }
    HeisenbergExpansion out = x;
    out.displacement += spectra::overlap_alpha(
        g, *src.pump, phase_plus - src.phi_c, src.alpha_max);
    return out;
}

std::pair<HeisenbergExpansion, HeisenbergExpansion>
apply_parametric(const HeisenbergExpansion& x1,
                 const HeisenbergExpansion& x2,
                 const ParametricSource& src,
                 ChiOverlaps overlaps,
                 ParametricCoefficients coefficients)
{
    check_weak_regime(src);
    if (!src.pump)
    {
        throw DomainError("parametric source has no pump spectrum");
    }
    const Term& a1 = bare_annihilator(x1, "mode 1");
    const Term& a2 = bare_annihilator(x2, "mode 2");

    complex c{1.0, 0.0};
    complex s1 = overlaps.chi_1;
    complex s2 = overlaps.chi_2;
    if (coefficients == ParametricCoefficients::Exact)
    {
        c = std::cosh(complex{src.chi_max, 0.0});
        s1 = std::sinh(overlaps.chi_1);
        s2 = std::sinh(overlaps.chi_2);
    }

    auto evolve = [&](const HeisenbergExpansion& x,
                      const Term& own,
                      const Term& partner_field,
                      complex s,
                      complex partner_displacement) {
        HeisenbergExpansion out;
        for (const auto& t : x.terms)
        {
            Term scaled = t;
            scaled.coefficient *= c;
            out.terms.push_back(std::move(scaled));
        }
        out.terms.push_back(Term{partner_field.label,
                                 OperatorKind::Creation,
                                 src.pump,
                                 src.phi_c,
                                 own.event_phase,
                                 s});
        out.displacement = c * x.displacement + s * std::conj(partner_displacement);
        return out;
    };

    return {evolve(x1, a1, a2, s1, x2.displacement),
            evolve(x2, a2, a1, s2, x1.displacement)};
}

complex ContractionContext::commutator(const Term& a, const Term& b) const
{
    if (!(a.label == b.label))
    {
        return {0.0, 0.0};
    }
    complex k_part = spectra::spectral_overlap(
        *a.spectrum, *b.spectrum, a.spectral_phase - b.spectral_phase);
    if (formalism == Formalism::Event)
    {
        k_part *= smearing.overlap(a.event_phase - b.event_phase);
    }
    return k_part;
}

double vacuum_singles(const HeisenbergExpansion& x,
                      const ContractionContext& ctx)
{
    const Split s = split(x);
    std::vector<std::pair<complex, const Term*>> excited;
    for (const Term* b : s.creators)
    {
        excited.emplace_back(b->coefficient, b);
    }
    return std::norm(x.displacement) + one_photon_norm(excited, ctx);
}

double vacuum_coincidence(const HeisenbergExpansion& x1,
                          const HeisenbergExpansion& x2,
                          const ContractionContext& ctx,
                          Truncation truncation)
{
    // Expand x2 x1 |0> into vacuum, one-photon and two-photon components.
    const Split s1 = split(x1);
    const Split s2 = split(x2);
    const complex d1 = x1.displacement;
    const complex d2 = x2.displacement;

    complex vacuum = d1 * d2;
    for (const Term* a : s2.annihilators)
    {
        for (const Term* b : s1.creators)
        {
            vacuum += a->coefficient * b->coefficient * ctx.commutator(*a, *b);
        }
    }

    std::vector<std::pair<complex, const Term*>> one;
    for (const Term* b : s2.creators)
    {
        one.emplace_back(d1 * b->coefficient, b);
    }
    for (const Term* b : s1.creators)
    {
        one.emplace_back(d2 * b->coefficient, b);
    }

    double total = std::norm(vacuum) + one_photon_norm(one, ctx);

    if (truncation == Truncation::Exact)
    {
        // || sum e2_l e1_j B2_l^dag B1_j^dag |0> ||^2 by Wick's theorem.
        complex pairs{0.0, 0.0};
        for (const Term* bl : s2.creators)
        {
            for (const Term* bj : s1.creators)
            {
                const complex left = std::conj(bl->coefficient * bj->coefficient);
                for (const Term* bm : s2.creators)
                {
                    for (const Term* bn : s1.creators)
                    {
                        const complex right = bm->coefficient * bn->coefficient;
                        const complex wick
                            = ctx.commutator(*bl, *bm) * ctx.commutator(*bj, *bn)
                              + ctx.commutator(*bl, *bn) * ctx.commutator(*bj, *bm);
                        pairs += left * right * wick;
                    }
                }
            }
        }
        total += pairs.real();
    }
    return std::max(total, 0.0);
}

} // namespace gdecor::formalism

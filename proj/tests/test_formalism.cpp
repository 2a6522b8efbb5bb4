#include <cmath>
#include <memory>
#include <random>

#include <doctest.h>

#include "gdecor/errors.hpp"
#include "gdecor/formalism.hpp"

using namespace gdecor;
using namespace gdecor::formalism;

namespace {

std::shared_ptr<const Spectrum> gaussian(double k0 = 1e3, double sigma = 10.0)
{
    return std::make_shared<const Spectrum>(Spectrum::gaussian(k0, sigma));
}

struct Pair
{
    HeisenbergExpansion x1;
    HeisenbergExpansion x2;
};

Pair parametric_pair(double chi,
                     double p2,
                     double q2,
                     ParametricCoefficients coeffs,
                     std::shared_ptr<const Spectrum> g = gaussian())
{
    const ParametricSource src{chi, 0.0, g};
    auto x1 = HeisenbergExpansion::input_field({1}, g, 0.0, 0.0);
    auto x2 = HeisenbergExpansion::input_field({2}, g, p2, q2);
    const ChiOverlaps ov{overlap_chi(*g, *g, 0.0, chi),
                         overlap_chi(*g, *g, p2, chi)};
    auto [y1, y2] = apply_parametric(x1, x2, src, ov, coeffs);
    return {y1, y2};
}

} // namespace

TEST_CASE("vacuum inputs give no counts")
{
    const auto g = gaussian();
    const auto x1 = HeisenbergExpansion::input_field({1}, g, 0.0, 0.0);
    const auto x2 = HeisenbergExpansion::input_field({2}, g, 0.0, 0.0);
    const ContractionContext ctx{Formalism::Event, EventSmearing::gaussian(1.0)};
    CHECK(vacuum_singles(x1, ctx) == 0.0);
    CHECK(vacuum_coincidence(x1, x2, ctx) == 0.0);
    CHECK(vacuum_coincidence(x1, x2, ctx, Truncation::Exact) == 0.0);
}

TEST_CASE("commutator contracts only like modes")
{
    const auto g = gaussian();
    const Term a{{1}, OperatorKind::Annihilation, g, 0.0, 0.0, {1.0, 0.0}};
    const Term b{{2}, OperatorKind::Creation, g, 0.0, 0.0, {1.0, 0.0}};
    const ContractionContext ctx{Formalism::Mode, EventSmearing::gaussian(1.0)};
    CHECK(ctx.commutator(a, b) == complex(0.0, 0.0));
    CHECK(std::abs(ctx.commutator(a, a) - complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("commutator is Hermitian and factorizes under the event formalism")
{
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto g = gaussian(100.0, 5.0);
    const auto h = gaussian(101.0, 7.0);
    const auto j = EventSmearing::gaussian(0.8);
    const ContractionContext mode{Formalism::Mode, j};
    const ContractionContext event{Formalism::Event, j};
    for (int i = 0; i < 100; ++i)
    {
        const Term a{{1}, OperatorKind::Annihilation, g, u(rng), u(rng), {1.0, 0.0}};
        const Term b{{1}, OperatorKind::Creation, h, u(rng), u(rng), {1.0, 0.0}};
        CHECK(std::abs(mode.commutator(a, b) - std::conj(mode.commutator(b, a)))
              < 1e-14);
        CHECK(std::abs(event.commutator(a, b)
                       - mode.commutator(a, b)
                             * j.overlap(a.event_phase - b.event_phase))
              < 1e-14);
    }
}

TEST_CASE("displacement gives Poissonian counts")
{
    const auto g = gaussian();
    const complex alpha{0.6, 0.2};
    const DisplacementSource src{alpha, 0.0, g};
    const auto x1 = apply_displacement(
        HeisenbergExpansion::input_field({1}, g, 0.0, 0.0), src, *g, 0.0);
    const auto x2 = apply_displacement(
        HeisenbergExpansion::input_field({2}, g, 0.0, 3.0), src, *g, 0.0);
    for (auto f : {Formalism::Mode, Formalism::Event})
    {
        const ContractionContext ctx{f, EventSmearing::gaussian(0.1)};
        CHECK(vacuum_singles(x1, ctx) == doctest::Approx(std::norm(alpha)));
        CHECK(vacuum_coincidence(x1, x2, ctx)
              == doctest::Approx(std::norm(alpha) * std::norm(alpha)));
    }
    CHECK_THROWS_AS(apply_displacement(x1, DisplacementSource{alpha, 0.0, nullptr},
                                       *g, 0.0),
                    DomainError);
}

TEST_CASE("weak parametric pair at matched phases")
{
    const double chi = 0.1;
    const auto p = parametric_pair(chi, 0.0, 0.0, ParametricCoefficients::Weak);
    for (auto f : {Formalism::Mode, Formalism::Event})
    {
        const ContractionContext ctx{f, EventSmearing::gaussian(1.0)};
        CHECK(vacuum_singles(p.x1, ctx) == doctest::Approx(chi * chi));
        CHECK(vacuum_singles(p.x2, ctx) == doctest::Approx(chi * chi));
        CHECK(vacuum_coincidence(p.x1, p.x2, ctx)
              == doctest::Approx(chi * chi).epsilon(1e-14));
    }
}

TEST_CASE("event phase offset decorrelates only under the event formalism")
{
    const double chi = 0.05;
    const double d_t = 0.3;
    for (double delta : {0.0, 0.2, 0.6, 1.5})
    {
        const auto p
            = parametric_pair(chi, 0.0, -delta, ParametricCoefficients::Weak);
        const ContractionContext mode{Formalism::Mode, EventSmearing::gaussian(d_t)};
        const ContractionContext event{Formalism::Event,
                                       EventSmearing::gaussian(d_t)};
        CHECK(vacuum_coincidence(p.x1, p.x2, mode)
              == doctest::Approx(chi * chi).epsilon(1e-14));
        CHECK(vacuum_coincidence(p.x1, p.x2, event)
              == doctest::Approx(chi * chi
                                 * std::exp(-delta * delta / (4 * d_t * d_t)))
                     .epsilon(1e-13));
        CHECK(vacuum_singles(p.x1, event) == doctest::Approx(chi * chi));
        CHECK(vacuum_singles(p.x2, event) == doctest::Approx(chi * chi));
    }
}

TEST_CASE("exact coefficients reproduce two-mode squeezed vacuum moments")
{
    for (double r : {0.01, 0.05, 0.12, 0.2})
    {
        const auto p = parametric_pair(r, 0.0, 0.0, ParametricCoefficients::Exact);
        const ContractionContext ctx{Formalism::Mode, EventSmearing::gaussian(1.0)};
        const double s2 = std::sinh(r) * std::sinh(r);
        CHECK(vacuum_singles(p.x1, ctx) == doctest::Approx(s2).epsilon(1e-13));
        // <n1 n2> = <n^2> = s^2 (1 + 2 s^2) for a two-mode squeezed vacuum.
        CHECK(vacuum_coincidence(p.x1, p.x2, ctx, Truncation::Exact)
              == doctest::Approx(s2 * (1.0 + 2.0 * s2)).epsilon(1e-13));
        // Leading truncation drops the pair-squared s^4 term.
        CHECK(vacuum_coincidence(p.x1, p.x2, ctx, Truncation::Leading)
              == doctest::Approx(s2 * (1.0 + s2)).epsilon(1e-13));
    }
}

TEST_CASE("spectral mismatch reduces the weak coincidence")
{
    const double chi = 0.1;
    const auto g = gaussian(1e3, 10.0);
    double last = 2.0;
    for (double p2 : {0.0, 0.05, 0.1, 0.2})
    {
        const auto p = parametric_pair(chi, p2, 0.0, ParametricCoefficients::Weak, g);
        const ContractionContext ctx{Formalism::Mode, EventSmearing::gaussian(1.0)};
        const double c = vacuum_coincidence(p.x1, p.x2, ctx) / (chi * chi);
        CHECK(c <= last + 1e-15);
        last = c;
    }
}

TEST_CASE("parametric evolution guards")
{
    const auto g = gaussian();
    auto x1 = HeisenbergExpansion::input_field({1}, g, 0.0, 0.0);
    auto x2 = HeisenbergExpansion::input_field({2}, g, 0.0, 0.0);
    CHECK_THROWS_AS(apply_parametric(x1, x2, ParametricSource{0.3, 0.0, g}, {}),
                    RegimeError);
    CHECK_THROWS_AS(check_weak_regime(ParametricSource{-0.1, 0.0, g}),
                    RegimeError);
    CHECK_THROWS_AS(apply_parametric(x1, x2, ParametricSource{0.1, 0.0, nullptr}, {}),
                    DomainError);
    auto [y1, y2] = apply_parametric(x1, x2, ParametricSource{0.1, 0.0, g}, {});
    CHECK_THROWS_AS(apply_parametric(y1, y2, ParametricSource{0.1, 0.0, g}, {}),
                    UnsupportedError);
}

TEST_CASE("partner terms inherit the event phase of their field")
{
    const auto p = parametric_pair(0.1, 0.0, -0.7, ParametricCoefficients::Weak);
    REQUIRE(p.x1.terms.size() == 2);
    REQUIRE(p.x2.terms.size() == 2);
    CHECK(p.x1.terms[1].kind == OperatorKind::Creation);
    CHECK(p.x1.terms[1].label == InputLabel{2});
    CHECK(p.x1.terms[1].event_phase == 0.0);
    CHECK(p.x2.terms[1].label == InputLabel{1});
    CHECK(p.x2.terms[1].event_phase == -0.7);
}

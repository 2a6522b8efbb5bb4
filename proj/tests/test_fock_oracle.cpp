#include <cmath>
#include <random>

#include <doctest.h>

#include "gdecor/errors.hpp"
#include "gdecor/fock_oracle.hpp"

using namespace gdecor;
using namespace gdecor::fock;
using formalism::Formalism;

namespace {

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

OracleConfig single_bin(double chi)
{
    OracleConfig cfg;
    cfg.k = {1.0};
    cfg.detector_amplitude = {{1.0, 0.0}};
    cfg.pump_amplitude = {{1.0, 0.0}};
    cfg.chi = chi;
    return cfg;
}

} // namespace

TEST_CASE("oracle: a single bin is a normalized two-mode pair")
{
    for (double chi : {0.0, 0.01, 0.05, 0.2})
    {
        CHECK(fock_oracle_coincidence(single_bin(chi))
              == doctest::Approx(chi * chi / (1.0 + chi * chi)).epsilon(1e-14));
    }
}

TEST_CASE("oracle: event phases are ignored under the mode formalism")
{
    std::mt19937 rng(1);
    auto cfg = random_oracle_config(rng, 3, 2, Formalism::Mode, 0.05);
    const double c0 = fock_oracle_coincidence(cfg);
    cfg.event_phase_2 += 1.3;
    CHECK(fock_oracle_coincidence(cfg) == doctest::Approx(c0).epsilon(1e-14));
}

TEST_CASE("oracle: size caps raise ResourceError")
{
    std::mt19937 rng(2);
    auto cfg = random_oracle_config(rng, 4, 4, Formalism::Event, 0.05);
    CHECK_NOTHROW(fock_oracle_coincidence(cfg));

    auto many_k = random_oracle_config(rng, 5, 2, Formalism::Mode, 0.05);
    CHECK_THROWS_AS(fock_oracle_coincidence(many_k), ResourceError);
    auto many_w = random_oracle_config(rng, 2, 6, Formalism::Event, 0.05);
    CHECK_THROWS_AS(fock_oracle_coincidence(many_w), ResourceError);
    cfg.max_photons_per_bin = 3;
    CHECK_THROWS_AS(fock_oracle_coincidence(cfg), ResourceError);
}

TEST_CASE("oracle: Omega grid must be symmetric")
{
    std::mt19937 rng(3);
    auto cfg = random_oracle_config(rng, 2, 3, Formalism::Event, 0.05);
    cfg.omega = {-1.0, 0.0, 2.0};
    CHECK_THROWS_AS(fock_oracle_coincidence(cfg), DomainError);
}

TEST_CASE("oracle agrees with the Heisenberg expansion to O(chi^2)")
{
    std::mt19937 rng(42);
    for (std::size_t nk : {2u, 3u, 4u})
    {
        for (std::size_t nw : {2u, 3u, 4u})
        {
            for (auto f : {Formalism::Mode, Formalism::Event})
            {
                const double chi = 0.05;
                const auto cfg = random_oracle_config(rng, nk, nw, f, chi);
                const double oracle = fock_oracle_coincidence(cfg);
                const double expansion = expansion_coincidence(cfg);
                CHECK(rel(oracle, expansion) < 10.0 * chi * chi);
            }
        }
    }
}

TEST_CASE("oracle discrepancy shrinks like chi^2")
{
    std::mt19937 rng(8);
    for (int i = 0; i < 10; ++i)
    {
        auto cfg = random_oracle_config(rng, 3, 4, Formalism::Event, 0.04);
        const double gap_big = rel(fock_oracle_coincidence(cfg),
                                   expansion_coincidence(cfg));
        cfg.chi = 0.02;
        const double gap_small = rel(fock_oracle_coincidence(cfg),
                                     expansion_coincidence(cfg));
        CHECK(gap_small < gap_big);
        CHECK(gap_small / gap_big == doctest::Approx(0.25).epsilon(0.01));
    }
}

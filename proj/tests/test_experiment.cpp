#include <chrono>
#include <cmath>
#include <random>

#include <doctest.h>

#include "gdecor/errors.hpp"
#include "gdecor/experiment.hpp"

using namespace gdecor;
using namespace gdecor::experiment;

namespace {

constexpr double kEarthMass = 4.4e-3;
constexpr double kEarthRadius = 6.38e6;
constexpr double kDt = 6e-5;

std::shared_ptr<const Spectrum> detector_spectrum()
{
    return std::make_shared<const Spectrum>(Spectrum::gaussian(1e7, 1e3));
}

SourceModel parametric(double chi)
{
    return formalism::ParametricSource{chi, 0.0, detector_spectrum()};
}

SourceModel displacement(double alpha)
{
    return formalism::DisplacementSource{{alpha, 0.0}, 0.0, detector_spectrum()};
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

} // namespace

TEST_CASE("layout constructors")
{
    const auto s = ExperimentLayout::satellite(kEarthRadius, 1e5);
    CHECK(s.x_p - s.x_m == 1e5);
    CHECK(s.x_d1 == kGeostationaryRadius);
    CHECK(s.x_d2 == kGeostationaryRadius + 2e5);
    const auto g = ExperimentLayout::split_ground_orbit(kEarthRadius, 1e5);
    CHECK(g.x_d1 == g.x_m);
    CHECK(g.x_d2 == g.x_p);
    CHECK(g.t_d2 == -1e5);
}

TEST_CASE("layout validation")
{
    const SchwarzschildBackground bg(kEarthMass);
    auto l = ExperimentLayout::satellite(kEarthRadius, 1e5);
    CHECK_NOTHROW(l.validate(bg));
    auto bad = l;
    bad.x_m = bad.x_p + 1.0;
    CHECK_THROWS_AS(bad.validate(bg), DomainError);
    bad = l;
    bad.x_d1 = l.x_p - 1.0;
    CHECK_THROWS_AS(bad.validate(bg), DomainError);
    bad = l;
    bad.x_d2 = NAN;
    CHECK_THROWS_AS(bad.validate(bg), DomainError);
    CHECK_THROWS_AS(ExperimentLayout::satellite(1e-3, 1.0).validate(bg),
                    DomainError);
}

TEST_CASE("flat-space placement puts detector 2 twice the loop further out")
{
    const SchwarzschildBackground flat(0.0);
    for (double h : {1.0, 1e3, 1e5})
    {
        const auto l = ExperimentLayout::satellite(kEarthRadius, h);
        const auto p = place_detectors(l, flat, parametric(0.1));
        CHECK(p.solved_value == 2.0 * h);
        CHECK(p.layout.x_d2 - p.layout.x_d1 == 2.0 * h);
        CHECK(modal_phase_mismatch(p.layout, flat) == 0.0);
        CHECK(delta_offset(p.layout, flat) == 0.0);
    }
}

TEST_CASE("placement zeroes the modal phase mismatch")
{
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i)
    {
        const SchwarzschildBackground bg(1e-2 * u(rng));
        const double h = 1e2 + 3e5 * u(rng);
        const auto l = i % 2 ? ExperimentLayout::satellite(kEarthRadius, h)
                             : ExperimentLayout::split_ground_orbit(kEarthRadius, h);
        for (auto rule : {PlacementRule::ModalPhase, PlacementRule::FarField})
        {
            const auto p = place_detectors(l, bg, parametric(0.1), rule);
            CHECK(std::abs(p.residual) < 1e-9);
            CHECK(std::abs(placement_residual(l, bg, parametric(0.1), rule,
                                              p.solved_value))
                  < 1e-9);
        }
        const auto p = place_detectors(l, bg, displacement(0.5));
        CHECK(std::abs(modal_phase_mismatch(p.layout, bg)) < 1e-8);
    }
}

TEST_CASE("boundary phases differ by the grouped mismatch")
{
    const SchwarzschildBackground bg(1.0);
    auto l = ExperimentLayout::satellite(100.0, 20.0, 300.0);
    l.t_d2 = 3.0;
    const auto ph = boundary_phases(l, bg);
    CHECK(ph.phi2_minus - ph.phi1_minus
          == doctest::Approx(modal_phase_mismatch(l, bg)).epsilon(1e-12));
    CHECK(ph.phi1_minus - ph.phi1_plus
          == doctest::Approx(2.0 * 100.0 + 4.0 * std::log(100.0)));
}

TEST_CASE("geodesic trace: exact proper times against their approximations")
{
    const SchwarzschildBackground bg(kEarthMass);
    for (auto make : {+[](double h) { return ExperimentLayout::satellite(kEarthRadius, h); },
                      +[](double h) {
                          return ExperimentLayout::split_ground_orbit(kEarthRadius, h);
                      }})
    {
        const auto l = place_detectors(make(1e5), bg, parametric(0.1)).layout;
        const auto tr = geodesic_trace(l, bg, initial_time(l, bg));
        CHECK(tr.x_i1 == doctest::Approx(l.source_radius));
        CHECK(std::abs(tr.x_i2 - tr.x_i1) < 1e-8);
        // The approximations drop a path-independent O(M) constant and
        // O(M^2/r) terms; 1e-7 m is the rounding floor of tau ~ 4e7 m.
        CHECK(std::abs(tr.tau_1 - tr.tau_1_approx
                       - (tr.tau_2 - tr.tau_2_approx))
              < 1e-7);
        // Delta is the proper-time offset between the two paths.
        const double from_trace = (l.t_d1 - tr.tau_1) - (l.t_d2 - tr.tau_2);
        DeltaOptions exact;
        exact.model = DeltaModel::Exact;
        CHECK(from_trace == doctest::Approx(delta_offset(l, bg, exact)).epsilon(1e-6));
    }
    auto swapped = ExperimentLayout::satellite(kEarthRadius, 1e5);
    swapped.path_swap = true;
    CHECK_THROWS_AS(geodesic_trace(swapped, bg, 0.0), UnsupportedError);
}

TEST_CASE("initial points inside the reflectors are rejected")
{
    const SchwarzschildBackground bg(kEarthMass);
    const auto l = place_detectors(ExperimentLayout::satellite(kEarthRadius, 1e5),
                                   bg, parametric(0.1))
                       .layout;
    const double t_far = initial_time(l, bg);
    CHECK_THROWS_AS(delta_offset(l, bg, t_far + 1e9), DomainError);
}

TEST_CASE("far-field and exact delta at matched placement")
{
    const SchwarzschildBackground bg(kEarthMass);
    DeltaOptions exact;
    exact.model = DeltaModel::Exact;
    for (double h : {1e3, 1e4, 1e5, 3e5})
    {
        const auto split = place_detectors(
            ExperimentLayout::split_ground_orbit(kEarthRadius, h), bg,
            parametric(0.1)).layout;
        // Both keep every ratio here; they differ at O(M^2/r).
        CHECK(rel(delta_offset(split, bg), delta_offset(split, bg, exact)) < 1e-6);
        CHECK(delta_offset(split, bg)
              == doctest::Approx(kEarthMass * std::log1p(h / kEarthRadius))
                     .epsilon(1e-9));

        const auto sat = place_detectors(
            ExperimentLayout::satellite(kEarthRadius, h), bg, parametric(0.1))
                             .layout;
        CHECK(delta_offset(sat, bg)
              == doctest::Approx(2.0 * kEarthMass * std::log1p(h / kEarthRadius))
                     .epsilon(1e-9));
        // The exact value keeps the far-station ratio the far-field model drops.
        const double station = kEarthMass * std::log(sat.x_d1 / sat.x_d2);
        CHECK(delta_offset(sat, bg, exact)
              == doctest::Approx(delta_offset(sat, bg) + station).epsilon(1e-6));
    }
}

TEST_CASE("small-height delta")
{
    CHECK(delta_small_height(Variant::SatelliteBoth, kEarthMass, 1e5, kEarthRadius)
          == doctest::Approx(2 * kEarthMass * 1e5 / kEarthRadius));
    CHECK(delta_small_height(Variant::SplitGroundOrbit, kEarthMass, 1e5,
                             kEarthRadius)
          == doctest::Approx(kEarthMass * 1e5 / kEarthRadius));

    const SchwarzschildBackground bg(kEarthMass);
    for (double h : {1e3, 3e4, 1.2e5, 3e5})
    {
        const auto sat = place_detectors(
            ExperimentLayout::satellite(kEarthRadius, h), bg, parametric(0.1))
                             .layout;
        const double x = h / kEarthRadius;
        const double ratio
            = delta_offset(sat, bg)
              / delta_small_height(Variant::SatelliteBoth, kEarthMass, h,
                                   kEarthRadius);
        // ln(1 + x) / x: within 1% below h/r_e = 0.02, 2.3% at 300 km.
        CHECK(ratio == doctest::Approx(std::log1p(x) / x).epsilon(1e-9));
        if (x < 0.02)
        {
            CHECK(std::abs(ratio - 1.0) < 0.01);
        }
    }
}

TEST_CASE("delta grows with height")
{
    const SchwarzschildBackground bg(kEarthMass);
    double last = 0.0;
    for (int i = 1; i <= 30; ++i)
    {
        const auto l = place_detectors(
            ExperimentLayout::split_ground_orbit(kEarthRadius, 1e4 * i), bg,
            parametric(0.1)).layout;
        const double d = delta_offset(l, bg);
        CHECK(d > last);
        last = d;
    }
}

TEST_CASE("threshold heights")
{
    const SchwarzschildBackground bg(kEarthMass);
    const auto j = EventSmearing::gaussian(kDt);
    const auto t0 = std::chrono::steady_clock::now();
    const double sat = threshold_height(bg, j, Variant::SatelliteBoth, kEarthRadius);
    const double split
        = threshold_height(bg, j, Variant::SplitGroundOrbit, kEarthRadius);
    const auto elapsed = std::chrono::steady_clock::now() - t0;

    CHECK(sat == doctest::Approx(kEarthRadius * std::expm1(kDt / kEarthMass))
                     .epsilon(1e-9));
    CHECK(split
          == doctest::Approx(kEarthRadius * std::expm1(2 * kDt / kEarthMass))
                 .epsilon(1e-9));
    CHECK(sat > 8.5e4);
    CHECK(sat < 9.2e4);
    CHECK(split > 1.70e5);
    CHECK(split < 1.85e5);
    CHECK(elapsed < std::chrono::seconds(1));

    // First order in d_t: doubling d_t doubles h*.
    const double doubled = threshold_height(bg, EventSmearing::gaussian(2 * kDt),
                                            Variant::SatelliteBoth, kEarthRadius);
    CHECK(doubled / sat == doctest::Approx(2.0).epsilon(0.02));

    CHECK_THROWS_AS(threshold_height(SchwarzschildBackground(0.0), j,
                                     Variant::SatelliteBoth, kEarthRadius),
                    ConvergenceError);
}

TEST_CASE("predict: parametric source at matched placement")
{
    const SchwarzschildBackground bg(kEarthMass);
    const auto g = detector_spectrum();
    const auto j = EventSmearing::gaussian(kDt);
    const double chi = 0.1;
    for (double h : {1e4, 8.76e4, 2e5})
    {
        const auto l = place_detectors(ExperimentLayout::satellite(kEarthRadius, h),
                                       bg, parametric(chi))
                           .layout;
        const auto mode = predict(l, bg, parametric(chi), g, j, Formalism::Mode);
        const auto event = predict(l, bg, parametric(chi), g, j, Formalism::Event);
        CHECK(mode.coincidence == doctest::Approx(chi * chi).epsilon(1e-9));
        CHECK(mode.smearing_factor == 1.0);
        CHECK(event.smearing_factor
              == doctest::Approx(std::exp(-event.delta * event.delta / (4 * kDt * kDt))));
        CHECK(event.coincidence
              == doctest::Approx(chi * chi * event.smearing_factor).epsilon(1e-9));
        CHECK(event.n1 == doctest::Approx(chi * chi).epsilon(1e-12));
        CHECK(event.n2 == doctest::Approx(chi * chi).epsilon(1e-9));
        CHECK(event.visibility
              == doctest::Approx(event.smearing_factor).epsilon(1e-9));
    }
}

TEST_CASE("predict: classical source is formalism independent")
{
    const SchwarzschildBackground bg(kEarthMass);
    const auto g = detector_spectrum();
    const auto j = EventSmearing::gaussian(kDt);
    const auto l = place_detectors(ExperimentLayout::satellite(kEarthRadius, 2e5),
                                   bg, displacement(0.7))
                       .layout;
    const auto mode = predict(l, bg, displacement(0.7), g, j, Formalism::Mode);
    const auto event = predict(l, bg, displacement(0.7), g, j, Formalism::Event);
    CHECK(event.coincidence == mode.coincidence);
    CHECK(mode.coincidence == doctest::Approx(std::pow(0.7, 4)).epsilon(1e-9));
    CHECK(mode.n1 == doctest::Approx(0.49));
}

TEST_CASE("predict: spectral mismatch lowers classical coincidences")
{
    const SchwarzschildBackground bg(kEarthMass);
    const auto g = detector_spectrum();
    const auto j = EventSmearing::gaussian(kDt);
    auto l = place_detectors(ExperimentLayout::satellite(kEarthRadius, 2e5), bg,
                             displacement(1.0))
                 .layout;
    l.t_d2 += 2e-3;
    const auto r = predict(l, bg, displacement(1.0), g, j, Formalism::Mode);
    // |<g|g>(dx)|^2 = exp(-sigma^2 dx^2) for each detector's overlap.
    CHECK(r.n2 == doctest::Approx(std::exp(-1e6 * 4e-6)).epsilon(1e-6));
}

TEST_CASE("path swap restores correlations")
{
    const SchwarzschildBackground bg(kEarthMass);
    const auto g = detector_spectrum();
    const auto j = EventSmearing::gaussian(kDt);
    auto l = ExperimentLayout::satellite(kEarthRadius, 2e5);
    l.path_swap = true;
    l = place_detectors(l, bg, parametric(0.1)).layout;
    const auto r = predict(l, bg, parametric(0.1), g, j, Formalism::Event);
    CHECK(std::abs(r.delta) < 1e-12);
    CHECK(r.coincidence == doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("predict needs a spectrum")
{
    const SchwarzschildBackground bg(0.0);
    const auto l = ExperimentLayout::satellite(kEarthRadius, 1e3);
    CHECK_THROWS_AS(predict(l, bg, parametric(0.1), nullptr,
                            EventSmearing::gaussian(kDt), Formalism::Mode),
                    DomainError);
}

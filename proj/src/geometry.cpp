#include "gdecor/geometry.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gdecor/errors.hpp"

namespace gdecor::geometry {

namespace {

// 2^20 subdivisions, the cap on adaptive refinement.
constexpr unsigned kMaxQuadratureDepth = 20;
constexpr double kQuadratureTolerance = 1e-14;
constexpr double kAgreementTolerance = 1e-12;

void require_outside_horizon(double r, const SchwarzschildBackground& bg)
{
    if (!(r > bg.horizon()))
    {
        std::ostringstream msg;
        msg << "radius " << r << " is not outside the horizon 2M = "
            << bg.horizon();
        throw DomainError(msg.str());
    }
}

void require_valid(const RadialInterval& iv, const SchwarzschildBackground& bg)
{
    if (!(iv.r_lo <= iv.r_hi))
    {
        std::ostringstream msg;
        msg << "radial interval [" << iv.r_lo << ", " << iv.r_hi
            << "] is reversed";
        throw DomainError(msg.str());
    }
    require_outside_horizon(iv.r_lo, bg);
}

} // namespace

SchwarzschildBackground::SchwarzschildBackground(double mass_length)
    : mass_length_{mass_length}
{
    if (!(mass_length >= 0.0) || !std::isfinite(mass_length))
    {
        throw DomainError("mass_length must be finite and non-negative");
    }
}

double metric_factor(double r, const SchwarzschildBackground& bg)
{
    require_outside_horizon(r, bg);
    return 1.0 - bg.horizon() / r;
}

double tortoise(double r, const SchwarzschildBackground& bg, TortoiseForm form)
{
    const double m = bg.mass_length();
    switch (form)
    {
        case TortoiseForm::Meters:
            if (!(r > 0.0))
            {
                throw DomainError("tortoise coordinate needs r > 0");
            }
            return r + 2.0 * m * std::log(r);
        case TortoiseForm::Textbook:
            if (bg.flat())
            {
                return r;
            }
            require_outside_horizon(r, bg);
            return r + 2.0 * m * std::log(r / (2.0 * m) - 1.0);
    }
    return r;
}

double coordinate_flight_time(const RadialInterval& iv,
                              const SchwarzschildBackground& bg,
                              TortoiseForm form)
{
    if (!(iv.r_lo <= iv.r_hi))
    {
        throw DomainError("radial interval is reversed");
    }
    const double m = bg.mass_length();
    if (bg.flat() || iv.r_lo == iv.r_hi)
    {
        return iv.width();
    }
    // Grouped as (r_hi - r_lo) + 2M * log-ratio so the flat part is exact.
    if (form == TortoiseForm::Meters)
    {
        if (!(iv.r_lo > 0.0))
        {
            throw DomainError("tortoise coordinate needs r > 0");
        }
        return iv.width() + 2.0 * m * std::log(iv.r_hi / iv.r_lo);
    }
    require_valid(iv, bg);
    return iv.width()
           + 2.0 * m
                 * std::log((iv.r_hi - 2.0 * m) / (iv.r_lo - 2.0 * m));
}

double proper_time_excess(double r, const SchwarzschildBackground& bg)
{
    require_outside_horizon(r, bg);
    const double m = bg.mass_length();
    if (m == 0.0)
    {
        return 0.0;
    }
    const double root = std::sqrt(r * (r - 2.0 * m));
    // sqrt(r(r-2M)) - r rewritten to avoid cancellation.
    const double algebraic = -2.0 * m * r / (root + r);
    return algebraic
           + 2.0 * m * std::log(std::sqrt(r) + std::sqrt(r - 2.0 * m));
}

double proper_time_closed_form(const RadialInterval& iv,
                               const SchwarzschildBackground& bg)
{
    require_valid(iv, bg);
    if (bg.flat() || iv.r_lo == iv.r_hi)
    {
        return iv.width();
    }
    return iv.width() + (proper_time_excess(iv.r_hi, bg)
                         - proper_time_excess(iv.r_lo, bg));
}

double proper_time_quadrature(const RadialInterval& iv,
                              const SchwarzschildBackground& bg)
{
    require_valid(iv, bg);
    if (bg.flat() || iv.r_lo == iv.r_hi)
    {
        return iv.width();
    }
    const double m = bg.mass_length();
    // sqrt(r / (r - 2M)) - 1 without cancellation; the width is added back.
    auto excess = [m](double r) {
        const double u = 2.0 * m / (r - 2.0 * m);
        return u / (std::sqrt(1.0 + u) + 1.0);
    };

    double error = 0.0;
    const double value
        = iv.width()
          + boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
              excess,
              iv.r_lo,
              iv.r_hi,
              kMaxQuadratureDepth,
              kQuadratureTolerance,
              &error);
    if (!std::isfinite(value) || error > kAgreementTolerance * std::abs(value))
    {
        std::ostringstream msg;
        msg << "proper-time quadrature over [" << iv.r_lo << ", " << iv.r_hi
            << "] stopped at estimated error " << error;
        throw ConvergenceError(msg.str());
    }
    return value;
}

double proper_time_radial(const RadialInterval& iv,
                          const SchwarzschildBackground& bg)
{
    const double closed = proper_time_closed_form(iv, bg);
    if (bg.flat() || iv.r_lo == iv.r_hi)
    {
        return closed;
    }
    const double numeric = proper_time_quadrature(iv, bg);
    if (std::abs(closed - numeric) > kAgreementTolerance * std::abs(closed))
    {
        std::ostringstream msg;
        msg.precision(17);
        msg << "closed-form proper time " << closed
            << " disagrees with quadrature " << numeric;
        throw ConvergenceError(msg.str());
    }
    return closed;
}

ShellIntervals shell_intervals(double dt,
                               double dr,
                               double r,
                               const SchwarzschildBackground& bg)
{
    const double lapse = std::sqrt(metric_factor(r, bg));
    return {lapse * dt, dr / lapse};
}

} // namespace gdecor::geometry

#pragma once

// Radial Schwarzschild geometry in geometric units (c = 1, lengths in meters).

namespace gdecor::geometry {

/// Background spacetime; mass_length is G*mass/c^2. Zero is flat space.
class SchwarzschildBackground
{
  public:
    SchwarzschildBackground() = default;
    explicit SchwarzschildBackground(double mass_length);

    double mass_length() const { return mass_length_; }
    double horizon() const { return 2.0 * mass_length_; }
    bool flat() const { return mass_length_ == 0.0; }

  private:
    double mass_length_ = 0.0;
};

/// Closed radial interval [r_lo, r_hi].
struct RadialInterval
{
    double r_lo = 0.0;
    double r_hi = 0.0;

    double width() const { return r_hi - r_lo; }
};

enum class TortoiseForm
{
    Meters,   ///< r + 2M ln(r), with r in meters
    Textbook, ///< r + 2M ln(r/2M - 1)
};

/// 1 - 2M/r.
double metric_factor(double r, const SchwarzschildBackground& bg);

double tortoise(double r,
                const SchwarzschildBackground& bg,
                TortoiseForm form = TortoiseForm::Meters);

/// Far-away coordinate time for radial light to cross the interval.
double coordinate_flight_time(const RadialInterval& iv,
                              const SchwarzschildBackground& bg,
                              TortoiseForm form = TortoiseForm::Meters);

/*!
 * Time accumulated by static shell observers while radial light crosses
 * the interval, i.e. the integral of dr / sqrt(1 - 2M/r).
 *
 * The closed-form antiderivative is returned. Every call also integrates
 * the integrand with adaptive Gauss-Kronrod quadrature and throws
 * ConvergenceError unless both agree to 1e-12 relative.
 */
double proper_time_radial(const RadialInterval& iv,
                          const SchwarzschildBackground& bg);

/// Closed-form half of proper_time_radial, without the quadrature check.
double proper_time_closed_form(const RadialInterval& iv,
                               const SchwarzschildBackground& bg);

/// Quadrature half of proper_time_radial.
double proper_time_quadrature(const RadialInterval& iv,
                              const SchwarzschildBackground& bg);

/*!
 * Curvature excess of the proper-time antiderivative:
 * sqrt(r(r-2M)) - r + 2M ln(sqrt(r) + sqrt(r-2M)).
 *
 * Differences of this function carry the whole gravitational part of a
 * proper-time difference without cancelling the (large) flat part.
 */
double proper_time_excess(double r, const SchwarzschildBackground& bg);

struct ShellIntervals
{
    double ds = 0.0; ///< local proper time
    double dl = 0.0; ///< local proper length
};

ShellIntervals shell_intervals(double dt,
                               double dr,
                               double r,
                               const SchwarzschildBackground& bg);

} // namespace gdecor::geometry

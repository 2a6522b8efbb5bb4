#include "gdecor/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gdecor/errors.hpp"

namespace gdecor::spectra {

namespace {

constexpr double kPositiveSupportSigmas = 6.0;

void check_axis(const std::vector<double>& axis,
                const std::vector<complex>& amplitude,
                const char* what)
{
    if (axis.size() < 2 || axis.size() != amplitude.size())
    {
        std::ostringstream msg;
        msg << what << " grid needs at least two samples and matching sizes";
        throw DomainError(msg.str());
    }
    for (std::size_t i = 0; i < axis.size(); ++i)
    {
        if (!std::isfinite(axis[i]) || !std::isfinite(amplitude[i].real())
            || !std::isfinite(amplitude[i].imag()))
        {
            throw DomainError(std::string(what) + " grid has non-finite values");
        }
        if (i > 0 && !(axis[i] > axis[i - 1]))
        {
            throw DomainError(std::string(what)
                              + " grid axis must be strictly increasing");
        }
    }
}

double grid_norm(const Samples& s)
{
    const auto w = trapezoid_weights(s.axis);
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
    {
        total += w[i] * std::norm(s.amplitude[i]);
    }
    return total;
}

// Normalizes in place and returns the factor applied.
double normalize(Samples& s, const char* what)
{
    const double n = grid_norm(s);
    if (!(n > 0.0))
    {
        throw DomainError(std::string(what) + " grid has zero norm");
    }
    const double factor = 1.0 / std::sqrt(n);
    for (auto& a : s.amplitude)
    {
        a *= factor;
    }
    return factor;
}

complex interpolate(const Samples& s, double x)
{
    const auto& ax = s.axis;
    if (x < ax.front() || x > ax.back())
    {
        return {0.0, 0.0};
    }
    auto hi = std::upper_bound(ax.begin(), ax.end(), x);
    if (hi == ax.end())
    {
        return s.amplitude.back();
    }
    const auto i = static_cast<std::size_t>(hi - ax.begin());
    const double t = (x - ax[i - 1]) / (ax[i] - ax[i - 1]);
    return (1.0 - t) * s.amplitude[i - 1] + t * s.amplitude[i];
}

// Integral of G(k) H~(k) exp(i k dx), H~ = conj(H) or H.
complex product_integral(const Spectrum& g,
                         const Spectrum& h,
                         double dx,
                         bool conjugate_h)
{
    using Kind = Spectrum::Kind;
    if (g.kind() == Kind::Gaussian && h.kind() == Kind::Gaussian)
    {
        // Real Gaussian amplitudes: conjugation is immaterial. The exponent
        // is written in the centred form so that large k0 does not cancel.
        const double va = g.sigma_k() * g.sigma_k();
        const double vb = h.sigma_k() * h.sigma_k();
        const double vs = va + vb;
        const double dk = g.k0() - h.k0();
        const double prefactor = std::sqrt(2.0 * g.sigma_k() * h.sigma_k() / vs);
        const double re = -dk * dk / (4.0 * vs) - dx * dx * va * vb / vs;
        const double im = dx * (g.k0() * vb + h.k0() * va) / vs;
        return prefactor * std::exp(complex{re, im});
    }

    const Spectrum& on_grid = g.kind() == Kind::Grid ? g : h;
    const auto& axis = on_grid.samples().axis;
    const auto w = trapezoid_weights(axis);
    complex total{0.0, 0.0};
    for (std::size_t i = 0; i < axis.size(); ++i)
    {
        const double k = axis[i];
        const complex hk = conjugate_h ? std::conj(h.amplitude(k))
                                       : h.amplitude(k);
        total += w[i] * g.amplitude(k) * hk * std::polar(1.0, k * dx);
    }
    return total;
}

} // namespace

std::vector<double> trapezoid_weights(std::span<const double> axis)
{
    std::vector<double> w(axis.size(), 0.0);
    for (std::size_t i = 1; i < axis.size(); ++i)
    {
        const double half = 0.5 * (axis[i] - axis[i - 1]);
        w[i - 1] += half;
        w[i] += half;
    }
    return w;
}

//---------------------------------------------------------------------------//

Spectrum Spectrum::gaussian(double k0, double sigma_k)
{
    if (!(sigma_k > 0.0) || !std::isfinite(k0) || !std::isfinite(sigma_k))
    {
        throw DomainError("Gaussian spectrum needs finite k0 and sigma_k > 0");
    }
    if (k0 < kPositiveSupportSigmas * sigma_k)
    {
        std::ostringstream msg;
        msg << "Gaussian spectrum needs k0 >= 6 sigma_k (k0 = " << k0
            << ", sigma_k = " << sigma_k << ")";
        throw DomainError(msg.str());
    }
    Spectrum s;
    s.kind_ = Kind::Gaussian;
    s.center_ = k0;
    s.width_ = sigma_k;
    return s;
}

Spectrum Spectrum::grid(std::vector<double> k, std::vector<complex> amplitude)
{
    check_axis(k, amplitude, "spectrum");
    if (!(k.front() > 0.0))
    {
        throw DomainError("spectrum grid must have support on k > 0 only");
    }
    Spectrum s;
    s.kind_ = Kind::Grid;
    s.samples_ = {std::move(k), std::move(amplitude)};
    s.norm_factor_ = normalize(s.samples_, "spectrum");
    // Intensity-weighted centre and width, for reporting.
    const auto w = trapezoid_weights(s.samples_.axis);
    double mean = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
    {
        mean += w[i] * std::norm(s.samples_.amplitude[i]) * s.samples_.axis[i];
    }
    double var = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
    {
        const double d = s.samples_.axis[i] - mean;
        var += w[i] * std::norm(s.samples_.amplitude[i]) * d * d;
    }
    s.center_ = mean;
    s.width_ = std::sqrt(var);
    return s;
}

complex Spectrum::amplitude(double k) const
{
    if (kind_ == Kind::Grid)
    {
        return interpolate(samples_, k);
    }
    const double v = width_ * width_;
    const double d = k - center_;
    return std::pow(2.0 * std::numbers::pi * v, -0.25)
           * std::exp(-d * d / (4.0 * v));
}

double Spectrum::norm() const
{
    return kind_ == Kind::Grid ? grid_norm(samples_) : 1.0;
}

//---------------------------------------------------------------------------//

EventSmearing EventSmearing::gaussian(double d_t)
{
    if (!(d_t > 0.0) || !std::isfinite(d_t))
    {
        throw DomainError("event smearing needs d_t > 0");
    }
    EventSmearing j;
    j.kind_ = Kind::Gaussian;
    j.d_t_ = d_t;
    return j;
}

EventSmearing EventSmearing::grid(std::vector<double> omega,
                                  std::vector<complex> amplitude)
{
    check_axis(omega, amplitude, "smearing");
    EventSmearing j;
    j.kind_ = Kind::Grid;
    j.samples_ = {std::move(omega), std::move(amplitude)};
    normalize(j.samples_, "smearing");
    const auto w = trapezoid_weights(j.samples_.axis);
    double mean = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
    {
        mean += w[i] * std::norm(j.samples_.amplitude[i]) * j.samples_.axis[i];
    }
    double var = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
    {
        const double d = j.samples_.axis[i] - mean;
        var += w[i] * std::norm(j.samples_.amplitude[i]) * d * d;
    }
    if (!(var > 0.0))
    {
        throw DomainError("smearing grid has zero spread");
    }
    j.d_t_ = 0.5 / std::sqrt(var);
    return j;
}

complex EventSmearing::amplitude(double omega) const
{
    if (kind_ == Kind::Grid)
    {
        return interpolate(samples_, omega);
    }
    // |J|^2 is a normal density with variance 1 / (4 d_t^2).
    const double v = 0.25 / (d_t_ * d_t_);
    return std::pow(2.0 * std::numbers::pi * v, -0.25)
           * std::exp(-omega * omega * d_t_ * d_t_);
}

complex EventSmearing::overlap(double delta) const
{
    if (delta == 0.0)
    {
        return {1.0, 0.0};
    }
    if (kind_ == Kind::Gaussian)
    {
        return {std::exp(-delta * delta / (8.0 * d_t_ * d_t_)), 0.0};
    }
    const auto& ax = samples_.axis;
    const auto w = trapezoid_weights(ax);
    complex total{0.0, 0.0};
    for (std::size_t i = 0; i < ax.size(); ++i)
    {
        total += w[i] * std::norm(samples_.amplitude[i])
                 * std::polar(1.0, ax[i] * delta);
    }
    return total;
}

//---------------------------------------------------------------------------//

complex spectral_overlap(const Spectrum& g, const Spectrum& h, double dx)
{
    return product_integral(g, h, dx, true);
}

complex same_time_commutator(const Spectrum& g, double dx)
{
    if (dx == 0.0)
    {
        return {g.norm(), 0.0};
    }
    return spectral_overlap(g, g, dx);
}

complex overlap_alpha(const Spectrum& g,
                      const Spectrum& h,
                      double phase_mismatch,
                      complex alpha_max)
{
    return spectral_overlap(g, h, phase_mismatch) * alpha_max;
}

complex overlap_chi(const Spectrum& g_j,
                    const Spectrum& h,
                    double phase_mismatch,
                    double chi_max)
{
    return spectral_overlap(g_j, h, phase_mismatch) * chi_max;
}

double detect_single_photon(const Spectrum& g,
                            const SinglePhotonProfile& nu,
                            double u)
{
    // <0| a(x, t) |nu> = int G(k) nu(k) exp(-i k u) dk.
    return std::norm(product_integral(g, nu.nu, -u, false));
}

double smearing_factor(const EventSmearing& j, double delta)
{
    return std::norm(j.overlap(delta));
}

Spectrum load_grid_spectrum(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("cannot open spectrum file '" + path + "'");
    }
    std::vector<double> k;
    std::vector<complex> amp;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
        {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        double kk = 0.0;
        double re = 0.0;
        double im = 0.0;
        if (!(fields >> kk >> re >> im))
        {
            std::ostringstream msg;
            msg << path << ":" << line_no << ": expected 'k re,im'";
            throw ConfigError(msg.str());
        }
        k.push_back(kk);
        amp.emplace_back(re, im);
    }
    return Spectrum::grid(std::move(k), std::move(amp));
}

} // namespace gdecor::spectra

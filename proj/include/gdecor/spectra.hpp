#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace gdecor::spectra {

using complex = std::complex<double>;

/// A sampled complex amplitude on a strictly increasing axis.
struct Samples
{
    std::vector<double> axis;
    std::vector<complex> amplitude;
};

/*!
 * Normalized spectral mode distribution G(k) over wave number.
 *
 * Gaussian spectra are amplitude profiles whose intensity |G|^2 is a normal
 * density centred on k0 with standard deviation sigma_k; they require
 * k0 >= 6 sigma_k so the weight at k < 0 is negligible. Grid spectra are
 * trapezoid-normalized samples on k > 0 and are linearly interpolated
 * (zero outside the grid).
 */
class Spectrum
{
  public:
    enum class Kind
    {
        Gaussian,
        Grid,
    };

    static Spectrum gaussian(double k0, double sigma_k);
    static Spectrum grid(std::vector<double> k, std::vector<complex> amplitude);

    Kind kind() const { return kind_; }
    double k0() const { return center_; }
    double sigma_k() const { return width_; }
    const Samples& samples() const { return samples_; }
    /// Factor applied to the supplied grid amplitudes (1 for Gaussians).
    double normalization_factor() const { return norm_factor_; }

    complex amplitude(double k) const;
    /// Integral of |G|^2 over the representation; 1 up to rounding.
    double norm() const;

  private:
    Spectrum() = default;

    Kind kind_ = Kind::Gaussian;
    double center_ = 0.0;
    double width_ = 0.0;
    Samples samples_;
    double norm_factor_ = 1.0;
};

/// Single-photon amplitude nu(k); normalized like any spectrum.
struct SinglePhotonProfile
{
    Spectrum nu;
};

/*!
 * Normalized temporal smearing distribution J(Omega) of an event operator.
 *
 * The Gaussian form has |J|^2 proportional to exp(-2 Omega^2 d_t^2), scaled
 * to unit integral, so the squared modulus of its characteristic function
 * is exp(-delta^2 / (4 d_t^2)).
 */
class EventSmearing
{
  public:
    enum class Kind
    {
        Gaussian,
        Grid,
    };

    static EventSmearing gaussian(double d_t);
    static EventSmearing grid(std::vector<double> omega,
                              std::vector<complex> amplitude);

    Kind kind() const { return kind_; }
    /// Temporal scale. For grids, 1/(2 sd) of the |J|^2 distribution.
    double d_t() const { return d_t_; }
    const Samples& samples() const { return samples_; }

    complex amplitude(double omega) const;

    /// Integral of |J(Omega)|^2 exp(i Omega delta) dOmega.
    complex overlap(double delta) const;

  private:
    EventSmearing() = default;

    Kind kind_ = Kind::Gaussian;
    double d_t_ = 0.0;
    Samples samples_;
};

/// Integral of G(k) conj(H(k)) exp(i k dx) dk.
complex spectral_overlap(const Spectrum& g, const Spectrum& h, double dx);

/// Integral of |G(k)|^2 exp(i k dx) dk.
complex same_time_commutator(const Spectrum& g, double dx);

complex overlap_alpha(const Spectrum& g,
                      const Spectrum& h,
                      double phase_mismatch,
                      complex alpha_max);

complex overlap_chi(const Spectrum& g_j,
                    const Spectrum& h,
                    double phase_mismatch,
                    double chi_max);

/// Single-photon click probability at retarded coordinate u = t - x.
double detect_single_photon(const Spectrum& g,
                            const SinglePhotonProfile& nu,
                            double u);

/// |J overlap|^2, the Gaussian case being exp(-delta^2 / (4 d_t^2)).
double smearing_factor(const EventSmearing& j, double delta);

/// Trapezoid weights for a strictly increasing axis.
std::vector<double> trapezoid_weights(std::span<const double> axis);

/*!
 * Parse a two-column spectrum file: each non-comment line holds
 * "k re,im" (or "k re im"). Lines starting with '#' are ignored.
 */
Spectrum load_grid_spectrum(const std::string& path);

} // namespace gdecor::spectra

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "gdecor/formalism.hpp"

namespace gdecor::fock {

using complex = std::complex<double>;

/*!
 * A discretized two-mode parametric experiment small enough for brute-force
 * Fock-space evaluation.
 *
 * Each mode is split into k-bins (and, under the event formalism, Omega
 * bins). Bin amplitudes are the trapezoid-weighted samples of the supplied
 * distributions. The pump creates photon pairs that are spectrally
 * unentangled in k and anti-correlated in Omega, so the Omega grid must be
 * symmetric about zero.
 */
struct OracleConfig
{
    std::vector<double> k;
    std::vector<complex> detector_amplitude;
    std::vector<complex> pump_amplitude;
    std::vector<double> omega;
    std::vector<complex> smearing_amplitude;

    formalism::Formalism formalism = formalism::Formalism::Mode;
    double chi = 0.0;

    double spectral_phase_1 = 0.0;
    double spectral_phase_2 = 0.0;
    double pump_phase = 0.0;
    double event_phase_1 = 0.0;
    double event_phase_2 = 0.0;

    int max_photons_per_bin = 2;
};

inline constexpr std::size_t kMaxOracleKBins = 4;
inline constexpr std::size_t kMaxOracleOmegaBins = 4;
inline constexpr int kMaxOraclePhotonsPerBin = 2;

/*!
 * Coincidence rate <a_m1^dag a_m2^dag a_m2 a_m1> in the normalized state
 * (1 + chi P^dag)|0>, computed by explicit operator application on
 * occupation-number vectors. Throws ResourceError past the size caps.
 */
double fock_oracle_coincidence(const OracleConfig& cfg);

/// The same quantity from the Heisenberg expansions (weak coefficients,
/// leading truncation), using grid spectra on the oracle's bins.
double expansion_coincidence(const OracleConfig& cfg);

/*!
 * A random oracle configuration: k-bins around 1 with Gaussian-like
 * amplitudes and random phases, and a symmetric Omega grid.
 */
OracleConfig random_oracle_config(std::mt19937& rng,
                                  std::size_t k_bins,
                                  std::size_t omega_bins,
                                  formalism::Formalism formalism,
                                  double chi);

} // namespace gdecor::fock

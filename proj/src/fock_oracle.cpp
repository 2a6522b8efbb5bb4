#include "gdecor/fock_oracle.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "gdecor/errors.hpp"

namespace gdecor::fock {

namespace {

using Occupation = std::vector<int>;
using State = std::map<Occupation, complex>;

// One smeared operator: amplitude per bin index.
using Operator = std::vector<std::pair<std::size_t, complex>>;

class FockSpace
{
  public:
    FockSpace(std::size_t bins, int cap) : bins_{bins}, cap_{cap} {}

    State vacuum() const { return {{Occupation(bins_, 0), {1.0, 0.0}}}; }

    State annihilate(const State& in, const Operator& op) const
    {
        State out;
        for (const auto& [occ, amp] : in)
        {
            for (const auto& [bin, c] : op)
            {
                if (occ[bin] == 0)
                {
                    continue;
                }
                Occupation next = occ;
                next[bin] -= 1;
                out[next] += c * std::sqrt(double(occ[bin])) * amp;
            }
        }
        return out;
    }

    State create(const State& in, const Operator& op) const
    {
        State out;
        for (const auto& [occ, amp] : in)
        {
            for (const auto& [bin, c] : op)
            {
                if (occ[bin] >= cap_)
                {
                    continue;
                }
                Occupation next = occ;
                next[bin] += 1;
                out[next] += c * std::sqrt(double(next[bin])) * amp;
            }
        }
        return out;
    }

  private:
    std::size_t bins_;
    int cap_;
};

double norm2(const State& s)
{
    double total = 0.0;
    for (const auto& [occ, amp] : s)
    {
        total += std::norm(amp);
    }
    return total;
}

void add_scaled(State& into, const State& from, complex scale)
{
    for (const auto& [occ, amp] : from)
    {
        into[occ] += scale * amp;
    }
}

std::vector<double> weights(const std::vector<double>& axis)
{
    if (axis.size() == 1)
    {
        return {1.0};
    }
    std::vector<double> w(axis.size(), 0.0);
    for (std::size_t i = 0; i + 1 < axis.size(); ++i)
    {
        const double h = axis[i + 1] - axis[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

// Bin amplitudes sqrt(w_i) f_i, rescaled to unit norm.
std::vector<complex> bin_amplitudes(const std::vector<double>& axis,
                                    const std::vector<complex>& f)
{
    const auto w = weights(axis);
    std::vector<complex> out(axis.size());
    double n = 0.0;
    for (std::size_t i = 0; i < axis.size(); ++i)
    {
        out[i] = std::sqrt(w[i]) * f[i];
        n += std::norm(out[i]);
    }
    if (!(n > 0.0))
    {
        throw DomainError("oracle distribution has zero norm");
    }
    for (auto& a : out)
    {
        a /= std::sqrt(n);
    }
    return out;
}

void check(const OracleConfig& cfg)
{
    std::ostringstream msg;
    if (cfg.k.size() > kMaxOracleKBins
        || cfg.omega.size() > kMaxOracleOmegaBins
        || cfg.max_photons_per_bin > kMaxOraclePhotonsPerBin)
    {
        msg << "oracle size " << cfg.k.size() << " k-bins x "
            << cfg.omega.size() << " Omega-bins, truncation "
            << cfg.max_photons_per_bin << " exceeds caps " << kMaxOracleKBins
            << " x " << kMaxOracleOmegaBins << ", " << kMaxOraclePhotonsPerBin;
        throw ResourceError(msg.str());
    }
    if (cfg.k.empty() || cfg.detector_amplitude.size() != cfg.k.size()
        || cfg.pump_amplitude.size() != cfg.k.size())
    {
        throw DomainError("oracle k-bins and amplitudes must match");
    }
    if (cfg.max_photons_per_bin < 1)
    {
        throw DomainError("oracle truncation must allow one photon per bin");
    }
    if (cfg.formalism == formalism::Formalism::Event)
    {
        if (cfg.omega.empty()
            || cfg.smearing_amplitude.size() != cfg.omega.size())
        {
            throw DomainError("oracle Omega-bins and amplitudes must match");
        }
        const std::size_t n = cfg.omega.size();
        for (std::size_t i = 0; i < n; ++i)
        {
            const double mirror = cfg.omega[n - 1 - i];
            if (std::abs(cfg.omega[i] + mirror)
                > 1e-12 * (1.0 + std::abs(mirror)))
            {
                throw DomainError("oracle Omega grid must be symmetric about 0");
            }
        }
    }
}

} // namespace

double fock_oracle_coincidence(const OracleConfig& cfg)
{
    check(cfg);
    const bool event = cfg.formalism == formalism::Formalism::Event;

    const auto g = bin_amplitudes(cfg.k, cfg.detector_amplitude);
    const auto h = bin_amplitudes(cfg.k, cfg.pump_amplitude);
    std::vector<double> omega{0.0};
    std::vector<complex> j{{1.0, 0.0}};
    if (event)
    {
        omega = cfg.omega;
        j = bin_amplitudes(cfg.omega, cfg.smearing_amplitude);
    }
    const std::size_t nk = g.size();
    const std::size_t nw = omega.size();
    auto index = [&](std::size_t mode, std::size_t b, std::size_t w) {
        return (mode * nk + b) * nw + w;
    };
    FockSpace space(2 * nk * nw, cfg.max_photons_per_bin);

    // Detector operators a_mj with the back-propagated phases.
    auto detector = [&](std::size_t mode, double p, double q) {
        Operator op;
        for (std::size_t b = 0; b < nk; ++b)
        {
            for (std::size_t w = 0; w < nw; ++w)
            {
                op.emplace_back(index(mode, b, w),
                                g[b] * std::polar(1.0, cfg.k[b] * p) * j[w]
                                    * std::polar(1.0, omega[w] * q));
            }
        }
        return op;
    };
    const Operator a1 = detector(0, cfg.spectral_phase_1, cfg.event_phase_1);
    const Operator a2 = detector(1, cfg.spectral_phase_2, cfg.event_phase_2);

    // Pair creation: mode-1 photon in (b, w), mode-2 photon in (b', -w).
    State pairs;
    const State vac = space.vacuum();
    for (std::size_t b = 0; b < nk; ++b)
    {
        for (std::size_t bp = 0; bp < nk; ++bp)
        {
            const complex k_amp = std::conj(h[b]) * std::conj(h[bp])
                                  * std::polar(1.0, -(cfg.k[b] + cfg.k[bp])
                                                        * cfg.pump_phase);
            for (std::size_t w = 0; w < nw; ++w)
            {
                const std::size_t wm = nw - 1 - w;
                if (std::abs(j[w]) == 0.0)
                {
                    continue;
                }
                const complex w_amp = std::conj(j[wm]) / j[w];
                const State one
                    = space.create(vac, {{index(0, b, w), {1.0, 0.0}}});
                const State two
                    = space.create(one, {{index(1, bp, wm), {1.0, 0.0}}});
                add_scaled(pairs, two, k_amp * w_amp);
            }
        }
    }

    State psi = vac;
    add_scaled(psi, pairs, {cfg.chi, 0.0});
    const double norm = norm2(psi);

    const State detected = space.annihilate(space.annihilate(psi, a1), a2);
    return norm2(detected) / norm;
}

double expansion_coincidence(const OracleConfig& cfg)
{
    using namespace gdecor::formalism;
    check(cfg);
    auto g = std::make_shared<const Spectrum>(
        Spectrum::grid(cfg.k, cfg.detector_amplitude));
    auto h = std::make_shared<const Spectrum>(
        Spectrum::grid(cfg.k, cfg.pump_amplitude));
    const EventSmearing smearing
        = cfg.formalism == Formalism::Event
              ? EventSmearing::grid(cfg.omega, cfg.smearing_amplitude)
              : EventSmearing::gaussian(1.0);

    const ParametricSource src{cfg.chi, cfg.pump_phase, h};
    auto x1 = HeisenbergExpansion::input_field(
        {1}, g, cfg.spectral_phase_1, cfg.event_phase_1);
    auto x2 = HeisenbergExpansion::input_field(
        {2}, g, cfg.spectral_phase_2, cfg.event_phase_2);
    const ChiOverlaps chi{
        spectra::overlap_chi(*g, *h, cfg.spectral_phase_1 - cfg.pump_phase,
                             cfg.chi),
        spectra::overlap_chi(*g, *h, cfg.spectral_phase_2 - cfg.pump_phase,
                             cfg.chi)};
    std::tie(x1, x2)
        = apply_parametric(x1, x2, src, chi, ParametricCoefficients::Weak);
    return vacuum_coincidence(x1, x2, ContractionContext{cfg.formalism, smearing},
                              Truncation::Leading);
}

OracleConfig random_oracle_config(std::mt19937& rng,
                                  std::size_t k_bins,
                                  std::size_t omega_bins,
                                  formalism::Formalism formalism,
                                  double chi)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(-3.0, 3.0);
    OracleConfig cfg;
    cfg.formalism = formalism;
    cfg.chi = chi;

    const double dk = 0.2 + 0.3 * unit(rng);
    for (std::size_t i = 0; i < k_bins; ++i)
    {
        const double k = 1.0 + dk * double(i);
        const double x = double(i) - 0.5 * double(k_bins - 1);
        cfg.k.push_back(k);
        cfg.detector_amplitude.push_back(
            std::polar((0.5 + unit(rng)) * std::exp(-0.2 * x * x),
                       phase(rng)));
        cfg.pump_amplitude.push_back(
            std::polar((0.5 + unit(rng)) * std::exp(-0.2 * x * x),
                       phase(rng)));
    }

    const double dw = 0.5 + unit(rng);
    for (std::size_t i = 0; i < omega_bins; ++i)
    {
        cfg.omega.push_back(dw * (double(i) - 0.5 * double(omega_bins - 1)));
    }
    // |J|^2 symmetric about zero, phases free.
    for (std::size_t i = 0; i < omega_bins; ++i)
    {
        const std::size_t mirror = omega_bins - 1 - i;
        const double mag = i <= mirror ? 0.5 + unit(rng)
                                       : std::abs(cfg.smearing_amplitude[mirror]);
        cfg.smearing_amplitude.push_back(std::polar(mag, phase(rng)));
    }

    cfg.spectral_phase_1 = phase(rng);
    cfg.spectral_phase_2 = phase(rng);
    cfg.pump_phase = phase(rng);
    cfg.event_phase_1 = phase(rng);
    cfg.event_phase_2 = phase(rng);
    return cfg;
}

} // namespace gdecor::fock

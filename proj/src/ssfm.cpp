#include "fiberlab/ssfm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fiberlab/errors.hpp"
#include "fiberlab/fft.hpp"
#include "fiberlab/kernels.hpp"
#include "fiberlab/rng.hpp"

namespace fiberlab {

namespace {

constexpr double kPlanck = 6.62607015e-34; // J s

// Dispersion multiplier over dz km: exp(-j (beta2/2) omega^2 dz), omega in
// rad/ps. Its inverse (+j) is the compensating filter.
std::vector<cdouble> dispersion_multiplier(size_t n, double sampling_rate, double beta2,
                                           double dz_km) {
    std::vector<cdouble> mult(n);
    for (size_t k = 0; k < n; ++k) {
        double f_thz = bin_frequency(k, n, sampling_rate) * 1e-3;
        double omega = 2.0 * std::numbers::pi * f_thz;
        double phase = -0.5 * beta2 * omega * omega * dz_km;
        mult[k] = {std::cos(phase), std::sin(phase)};
    }
    return mult;
}

void apply_spectral(Waveform& w, const std::vector<cdouble>& mult) {
    for (auto& pol : w.pols) {
        fft_forward(pol);
        kernels::multiply_inplace(pol, mult);
        fft_inverse(pol);
    }
}

void rotate(Waveform& w, double coeff) {
    if (w.pol_count() == 2)
        kernels::rotate_nonlinear(w.pols[0], w.pols[1], coeff);
    else
        kernels::rotate_nonlinear(w.pols[0], coeff);
}

void add_step_noise(Waveform& w, double variance, uint64_t noise_seed, uint64_t step) {
    double amp = std::sqrt(variance);
    for (int p = 0; p < w.pol_count(); ++p) {
        Rng rng(derive_seed(noise_seed, seed_tag::channel_noise, step, static_cast<uint64_t>(p)));
        for (auto& v : w.pols[static_cast<size_t>(p)]) v += amp * rng.complex_normal();
    }
}

size_t step_count(const LinkSpec& link, const SsfmSpec& ssfm) {
    double steps = link.length_km * 1000.0 / ssfm.step_m;
    auto rounded = static_cast<size_t>(std::llround(steps));
    if (rounded == 0 || std::fabs(steps - static_cast<double>(rounded)) > 1e-6)
        throw ConfigError("step size must tile the span length");
    return rounded;
}

void run_split_step(Waveform& w, const LinkSpec& link, const SsfmSpec& ssfm, double beta2,
                    double gamma_w_km, bool noise, uint64_t noise_seed) {
    link.validate();
    ssfm.validate(link);
    if (w.size() == 0) throw std::invalid_argument("empty waveform");
    if (!(w.sampling_rate > 0.0)) throw std::invalid_argument("waveform needs a sampling rate");
    if (w.pol_count() != 1 && w.pol_count() != 2)
        throw std::invalid_argument("pol_count must be 1 or 2");

    size_t steps = step_count(link, ssfm);
    double dz_km = ssfm.step_m * 1e-3;
    auto half = dispersion_multiplier(w.size(), w.sampling_rate, beta2, dz_km / 2.0);
    auto full = dispersion_multiplier(w.size(), w.sampling_rate, beta2, dz_km);

    // gamma is per W; amplitudes are sqrt(mW). Manakov coupling for two
    // polarizations.
    double pol_factor = w.pol_count() == 2 ? 8.0 / 9.0 : 1.0;
    double nl_coeff = pol_factor * gamma_w_km * 1e-3 * dz_km;

    double step_noise_var = link.nsp * kPlanck * (link.carrier_thz * 1e12) *
                            link.alpha_linear_per_m() * ssfm.step_m *
                            (w.sampling_rate * 1e9) * 1e3;

    apply_spectral(w, half);
    for (size_t s = 0; s < steps; ++s) {
        rotate(w, nl_coeff);
        if (noise && step_noise_var > 0.0) add_step_noise(w, step_noise_var, noise_seed, s);
        apply_spectral(w, s + 1 < steps ? full : half);
    }
}

} // namespace

void LinkSpec::validate() const {
    if (!(alpha_db_km >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
    if (!(length_km > 0.0)) throw std::invalid_argument("length must be positive");
    if (!(nsp >= 0.0)) throw std::invalid_argument("nsp must be >= 0");
    if (!(carrier_thz > 0.0)) throw std::invalid_argument("carrier frequency must be positive");
}

double LinkSpec::alpha_linear_per_m() const {
    return alpha_db_km * std::numbers::ln10 / 10.0 * 1e-3;
}

void SsfmSpec::validate(const LinkSpec& link) const {
    if (!(step_m > 0.0)) throw std::invalid_argument("step must be positive");
    step_count(link, *this);
}

void propagate(Waveform& w, const LinkSpec& link, const SsfmSpec& ssfm, uint64_t noise_seed) {
    run_split_step(w, link, ssfm, link.beta2_ps2_km, link.gamma_w_km, ssfm.noise, noise_seed);
}

void backpropagate(Waveform& w, const LinkSpec& link, const SsfmSpec& ssfm) {
    run_split_step(w, link, ssfm, -link.beta2_ps2_km, -link.gamma_w_km, false, 0);
}

void dispersion_compensate(Waveform& w, const LinkSpec& link) {
    link.validate();
    if (w.size() == 0) throw std::invalid_argument("empty waveform");
    auto mult = dispersion_multiplier(w.size(), w.sampling_rate, -link.beta2_ps2_km,
                                      link.length_km);
    apply_spectral(w, mult);
}

double ase_variance_in_band(const LinkSpec& link, double bandwidth_ghz) {
    link.validate();
    if (!(bandwidth_ghz > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    return link.nsp * kPlanck * (link.carrier_thz * 1e12) * link.alpha_linear_per_m() *
           (link.length_km * 1000.0) * (bandwidth_ghz * 1e9) * 1e3;
}

} // namespace fiberlab

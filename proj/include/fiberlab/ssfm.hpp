#pragma once

#include <cstdint>

#include "fiberlab/signal.hpp"

namespace fiberlab {

// Fiber span with ideal distributed amplification: gain cancels loss exactly
// within every step, so the attenuation coefficient enters only through the
// amplified-spontaneous-emission noise level. Dual-polarization waveforms
// evolve under the Manakov coupling (8/9 factor); single polarization uses
// the full nonlinear coefficient.
struct LinkSpec {
    double alpha_db_km = 0.2;
    double beta2_ps2_km = 21.7;
    double gamma_w_km = 1.27; // nonlinear coefficient, 1/W/km
    double length_km = 1000.0;
    double nsp = 1.0;          // spontaneous emission factor
    double carrier_thz = 193.41;

    void validate() const;
    double alpha_linear_per_m() const; // power attenuation, 1/m
};

struct SsfmSpec {
    double step_m = 500.0;
    bool noise = true;

    void validate(const LinkSpec& link) const; // step must tile the length
};

// Symmetrized split step: half-step dispersion, then per step a nonlinear
// rotation, additive noise injection (variance nsp h nu alpha dz Fs per
// polarization per sample, in mW), and a merged full linear step; a final
// half step closes the chain. Amplitudes are in sqrt(mW).
void propagate(Waveform& w, const LinkSpec& link, const SsfmSpec& ssfm, uint64_t noise_seed);

// Noiseless propagation with negated dispersion and nonlinearity. Exact
// operator inverse of the noiseless forward chain at matched steps; applied
// to noisy receive waveforms it implements digital backpropagation.
void backpropagate(Waveform& w, const LinkSpec& link, const SsfmSpec& ssfm);

// Single all-pass filter exp(+j (beta2/2) omega^2 L) undoing the accumulated
// link dispersion.
void dispersion_compensate(Waveform& w, const LinkSpec& link);

// Accumulated noise variance falling into a matched receiver of the given
// bandwidth: nsp h nu alpha L W, in mW.
double ase_variance_in_band(const LinkSpec& link, double bandwidth_ghz);

} // namespace fiberlab

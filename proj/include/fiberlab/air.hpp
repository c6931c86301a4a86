#pragma once

#include <cstdint>
#include <cstddef>

#include "fiberlab/signal.hpp"

namespace fiberlab {

// Log-likelihood of y given x under a circular Gaussian channel with the
// given per-dimension noise variance; base-2 logarithm, summed over all
// polarizations and symbols.
double awgn_log_metric(const SymbolSequence& y, const SymbolSequence& x, double sigma2);

// Log-density of y under the matching output distribution of an independent
// circular Gaussian input with per-polarization power signal_power: a
// zero-mean circular Gaussian with variance signal_power + sigma2 per
// dimension. Base-2, summed over all polarizations and symbols.
double unbiased_output_log(const SymbolSequence& y, double signal_power, double sigma2);

// Variance that maximizes the achievable-rate lower bound for the Gaussian
// decoding metric on the given input/output pair. Seeded at the mean squared
// error and refined by golden-section search on the two sufficient moments.
double optimize_metric_variance(const SymbolSequence& x, const SymbolSequence& y,
                                double signal_power);

struct AirEstimate {
    double air = 0.0;          // bits per symbol (all polarizations jointly)
    double gross = 0.0;        // before the selection rate loss
    double rate_loss = 0.0;    // (1/n) log2(proposals / accepts)
    double mismatched_entropy = 0.0; // -(1/N) metric term, bits per symbol
    double sigma2 = 0.0;       // metric variance used
    double signal_power = 0.0; // per-polarization reference power
    size_t symbols_used = 0;
    double eta = 1.0;          // accepts / proposals
    uint32_t block_length = 0;
    int pol_count = 1;

    double se_per_polarization() const { return air / pol_count; }
};

// Achievable information rate of the observed pairs under the Gaussian
// decoding metric, minus the rate loss of sequence selection bookkeeping.
// Pass proposals == accepts for an unselected (benchmark) input, which makes
// the rate loss zero; block_length only scales the rate loss.
AirEstimate estimate_air(const SymbolSequence& x, const SymbolSequence& y, double signal_power,
                         double sigma2, uint32_t block_length, uint64_t proposals,
                         uint64_t accepts);

} // namespace fiberlab

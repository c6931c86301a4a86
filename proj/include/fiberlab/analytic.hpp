#pragma once

#include <cstdint>

#include "fiberlab/signal.hpp"

namespace fiberlab {

// Block channel surrogate: y = x + w + xi, with w white complex Gaussian of
// variance sigma_w2 per symbol and xi a white distortion whose per-block mean
// energy per symbol follows a gamma law with shape nprime and mean a * P^3.
//
// a and sigma_w2 may be zero so that noiseless / distortion-free limits are
// expressible; operations that divide by them enforce positivity themselves.
struct AnalyticChannelParams {
    double a = 0.0;          // distortion coefficient, power^-2 units
    double sigma_w2 = 0.0;   // additive noise variance per symbol
    uint32_t block_length = 1; // n, symbols per block
    double shape = 1.0;      // nprime, gamma shape, 0 < shape <= n

    void validate() const;
};

// Assumed mean output power when normalizing the output density:
// signal + noise + distortion (default), signal + noise only, or
// signal + noise with the distortion power removed from the signal.
enum class OutputPowerConvention {
    SignalNoiseDistortion,
    SignalNoise,
    DistortionAnticorrelated,
};

// log2(1 + P / (sigma_w2 + a P^3)): rate of the Gaussian-input channel
// without selection.
double gaussian_air(double power, const AnalyticChannelParams& params);

// Power maximizing gaussian_air: (sigma_w2 / (2a))^(1/3).
double optimal_power(const AnalyticChannelParams& params);

// Probability that a block's distortion energy per symbol falls below
// gamma_lambda; equals the acceptance rate of threshold selection.
double acceptance_rate(double gamma_lambda, double power, const AnalyticChannelParams& params);
double log2_acceptance_rate(double gamma_lambda, double power, const AnalyticChannelParams& params);

// Mean distortion energy per symbol conditioned on acceptance,
// E{Lambda | Lambda < gamma_lambda}; approaches a P^3 as gamma_lambda grows.
double post_selection_nli_variance(double gamma_lambda, double power,
                                   const AnalyticChannelParams& params);

// Selection rate: log2(1 + P / (sigma_w2 + conditional distortion)) minus the
// per-symbol rate loss (1/n) log2(1 / acceptance_rate), plus the output-power
// correction implied by the chosen convention.
double air_with_selection(double power, double gamma_lambda, const AnalyticChannelParams& params,
                          OutputPowerConvention convention = OutputPowerConvention::SignalNoiseDistortion);

// Threshold approximately maximizing air_with_selection at high power:
// (nprime + 1) / (n - nprime) * sigma_w2. Requires shape < n.
double optimal_threshold(const AnalyticChannelParams& params);

// High-power behaviour of air_with_selection as a function of the shape:
// growth like (1 - 3 nprime / n) log2 P when 3 nprime < n, saturation at
// equality, decay otherwise.
enum class SelectionRegime { UnboundedGrowth, Saturating, PeakyDecay };
SelectionRegime classify_regime(uint32_t block_length, double shape);

// One block through the surrogate channel. The distortion and the additive
// noise come from independent substreams of `seed`, so a run with
// sigma_w2 = 0 reproduces the exact distortion realization of a noisy run.
// The per-block distortion energy equals its gamma draw exactly.
SymbolSequence synthetic_block_channel(const SymbolSequence& x,
                                       const AnalyticChannelParams& params, uint64_t seed);

// Distortion energy per symbol the surrogate assigns to `x` under `seed`;
// equals the memoryless cost of the noiseless surrogate output.
double synthetic_block_cost(const SymbolSequence& x, const AnalyticChannelParams& params,
                            uint64_t seed);

} // namespace fiberlab

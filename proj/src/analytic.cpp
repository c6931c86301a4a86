#include "fiberlab/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fiberlab/rng.hpp"
#include "fiberlab/special.hpp"

namespace fiberlab {

namespace {

constexpr double kLog2e = std::numbers::log2e;

double distortion_scale(double power, const AnalyticChannelParams& p) {
    return p.a * power * power * power;
}

// Argument of the incomplete gamma in every threshold formula.
double gamma_argument(double gamma_lambda, double power, const AnalyticChannelParams& p) {
    if (!(p.a > 0.0)) throw std::domain_error("threshold formulas need a > 0");
    if (!(power > 0.0)) throw std::domain_error("power must be positive");
    if (!(gamma_lambda > 0.0)) throw std::domain_error("gamma_lambda must be positive");
    return p.shape * gamma_lambda / distortion_scale(power, p);
}

} // namespace

void AnalyticChannelParams::validate() const {
    if (!(a >= 0.0)) throw std::invalid_argument("a must be >= 0");
    if (!(sigma_w2 >= 0.0)) throw std::invalid_argument("sigma_w2 must be >= 0");
    if (block_length == 0) throw std::invalid_argument("block_length must be positive");
    if (!(shape > 0.0) || shape > static_cast<double>(block_length))
        throw std::invalid_argument("shape must satisfy 0 < shape <= block_length");
}

double gaussian_air(double power, const AnalyticChannelParams& params) {
    params.validate();
    if (!(power >= 0.0)) throw std::domain_error("power must be >= 0");
    double denom = params.sigma_w2 + distortion_scale(power, params);
    if (denom <= 0.0) throw std::domain_error("noiseless distortion-free channel has no finite rate");
    return std::log2(1.0 + power / denom);
}

double optimal_power(const AnalyticChannelParams& params) {
    params.validate();
    if (!(params.a > 0.0)) throw std::domain_error("optimal_power needs a > 0");
    if (!(params.sigma_w2 > 0.0)) throw std::domain_error("optimal_power needs sigma_w2 > 0");
    return std::cbrt(params.sigma_w2 / (2.0 * params.a));
}

double acceptance_rate(double gamma_lambda, double power, const AnalyticChannelParams& params) {
    params.validate();
    return regularized_lower_gamma(params.shape, gamma_argument(gamma_lambda, power, params));
}

double log2_acceptance_rate(double gamma_lambda, double power,
                            const AnalyticChannelParams& params) {
    params.validate();
    return log_regularized_lower_gamma(params.shape, gamma_argument(gamma_lambda, power, params)) *
           kLog2e;
}

double post_selection_nli_variance(double gamma_lambda, double power,
                                   const AnalyticChannelParams& params) {
    params.validate();
    double xi = gamma_argument(gamma_lambda, power, params);
    // E{Lambda | Lambda < t} for Lambda ~ Gamma(s, mean m):
    // m * gamma(s+1, xi) / (s * gamma(s, xi)) with xi = s t / m,
    // evaluated in log space so deep-tail thresholds stay finite.
    double ratio = std::exp(log_regularized_lower_gamma(params.shape + 1.0, xi) -
                            log_regularized_lower_gamma(params.shape, xi));
    return distortion_scale(power, params) * ratio;
}

double air_with_selection(double power, double gamma_lambda, const AnalyticChannelParams& params,
                          OutputPowerConvention convention) {
    params.validate();
    if (!(power > 0.0)) throw std::domain_error("power must be positive");
    double cond_var = post_selection_nli_variance(gamma_lambda, power, params);
    double denom = params.sigma_w2 + cond_var;
    if (denom <= 0.0) throw std::domain_error("vanishing effective noise");
    double air = std::log2(1.0 + power / denom);
    switch (convention) {
        case OutputPowerConvention::SignalNoiseDistortion:
            break;
        case OutputPowerConvention::SignalNoise:
            air -= kLog2e * cond_var / (power + denom);
            break;
        case OutputPowerConvention::DistortionAnticorrelated:
            air -= 2.0 * kLog2e * cond_var / (power + denom);
            break;
    }
    double rate_loss = -log2_acceptance_rate(gamma_lambda, power, params) /
                       static_cast<double>(params.block_length);
    return air - rate_loss;
}

double optimal_threshold(const AnalyticChannelParams& params) {
    params.validate();
    if (!(params.sigma_w2 > 0.0)) throw std::domain_error("optimal_threshold needs sigma_w2 > 0");
    double n = static_cast<double>(params.block_length);
    if (!(params.shape < n))
        throw std::domain_error("optimal_threshold needs shape < block_length");
    return (params.shape + 1.0) / (n - params.shape) * params.sigma_w2;
}

SelectionRegime classify_regime(uint32_t block_length, double shape) {
    if (block_length == 0) throw std::invalid_argument("block_length must be positive");
    if (!(shape > 0.0)) throw std::invalid_argument("shape must be positive");
    double n = static_cast<double>(block_length);
    if (shape == std::floor(shape)) {
        // Exact integer comparison: 3 nprime vs n.
        uint64_t three_shape = 3 * static_cast<uint64_t>(shape);
        if (three_shape < block_length) return SelectionRegime::UnboundedGrowth;
        if (three_shape == block_length) return SelectionRegime::Saturating;
        return SelectionRegime::PeakyDecay;
    }
    double rel = 3.0 * shape / n - 1.0;
    if (std::fabs(rel) <= 1e-9) return SelectionRegime::Saturating;
    return rel < 0.0 ? SelectionRegime::UnboundedGrowth : SelectionRegime::PeakyDecay;
}

SymbolSequence synthetic_block_channel(const SymbolSequence& x,
                                       const AnalyticChannelParams& params, uint64_t seed) {
    params.validate();
    if (x.size() == 0) throw std::invalid_argument("empty input block");
    size_t n = x.size();
    SymbolSequence y = x;

    double power = energy_per_symbol(x);
    double mean_energy = distortion_scale(power, params);
    if (mean_energy > 0.0) {
        Rng nli(derive_seed(seed, seed_tag::synthetic_nli));
        double lambda = nli.gamma(params.shape) * mean_energy / params.shape;
        // White draw rescaled so the block's distortion energy per symbol
        // equals the gamma draw exactly.
        SymbolSequence g(x.pol_count(), n);
        double g_energy = 0.0;
        for (int p = 0; p < x.pol_count(); ++p)
            for (auto& v : g.pol(p)) {
                v = nli.complex_normal();
                g_energy += std::norm(v);
            }
        double scale = std::sqrt(lambda * static_cast<double>(n) / g_energy);
        for (int p = 0; p < x.pol_count(); ++p)
            for (size_t i = 0; i < n; ++i) y.pol(p)[i] += scale * g.pol(p)[i];
    }

    if (params.sigma_w2 > 0.0) {
        Rng awgn(derive_seed(seed, seed_tag::synthetic_awgn));
        double amp = std::sqrt(params.sigma_w2);
        for (int p = 0; p < x.pol_count(); ++p)
            for (size_t i = 0; i < n; ++i) y.pol(p)[i] += amp * awgn.complex_normal();
    }
    return y;
}

double synthetic_block_cost(const SymbolSequence& x, const AnalyticChannelParams& params,
                            uint64_t seed) {
    AnalyticChannelParams noiseless = params;
    noiseless.sigma_w2 = 0.0;
    SymbolSequence y = synthetic_block_channel(x, noiseless, seed);
    double acc = 0.0;
    for (int p = 0; p < x.pol_count(); ++p)
        for (size_t i = 0; i < x.size(); ++i) acc += std::norm(y.pol(p)[i] - x.pol(p)[i]);
    return acc / static_cast<double>(x.size());
}

} // namespace fiberlab

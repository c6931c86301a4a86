#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fiberlab/analytic.hpp"
#include "fiberlab/rng.hpp"
#include "fiberlab/special.hpp"

using namespace fiberlab;

namespace {

AnalyticChannelParams params(double a, double sigma_w2, uint32_t n, double shape) {
    AnalyticChannelParams p;
    p.a = a;
    p.sigma_w2 = sigma_w2;
    p.block_length = n;
    p.shape = shape;
    return p;
}

SymbolSequence constant_block(size_t n, double amplitude) {
    SymbolSequence x(1, n);
    for (auto& v : x.pol(0)) v = amplitude;
    return x;
}

} // namespace

TEST_CASE("distortion-free channel rate is the Shannon formula") {
    auto p = params(0.0, 0.001, 100, 1.0);
    for (double db = -20.0; db <= 30.0; db += 5.0) {
        double power = std::pow(10.0, db / 10.0);
        CHECK(gaussian_air(power, p) ==
              doctest::Approx(std::log2(1.0 + power / 0.001)).epsilon(1e-14));
    }
    CHECK(gaussian_air(0.0, p) == doctest::Approx(0.0));
}

TEST_CASE("unselected rate peaks at the closed-form power") {
    auto p = params(0.01, 0.001, 100, 1.0);
    double popt = optimal_power(p);
    CHECK(popt == doctest::Approx(std::cbrt(0.05)).epsilon(1e-14));
    CHECK(popt == doctest::Approx(0.36840314986403866).epsilon(1e-12));
    double peak = gaussian_air(popt, p);
    CHECK(peak > gaussian_air(popt * 1.001, p));
    CHECK(peak > gaussian_air(popt * 0.999, p));
    // At the peak the distortion contributes exactly half the additive noise.
    CHECK(0.01 * popt * popt * popt == doctest::Approx(0.001 / 2.0).epsilon(1e-14));

    CHECK_THROWS_AS(optimal_power(params(0.0, 0.001, 100, 1.0)), std::domain_error);
    CHECK_THROWS_AS(optimal_power(params(0.01, 0.0, 100, 1.0)), std::domain_error);
}

TEST_CASE("acceptance rate matches the exponential closed form at unit shape") {
    auto p = params(0.02, 0.0, 64, 1.0);
    for (double power : {0.2, 1.0, 3.0}) {
        double mean = 0.02 * power * power * power;
        for (double t : {0.3, 1.0, 2.5}) {
            double gl = t * mean;
            CHECK(acceptance_rate(gl, power, p) ==
                  doctest::Approx(-std::expm1(-t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("conditional distortion energy matches the truncated-exponential value") {
    // E{L | L < t} for a unit-mean exponential at t = 1.
    auto p = params(1.0, 0.0, 16, 1.0);
    double v = post_selection_nli_variance(1.0, 1.0, p);
    CHECK(v == doctest::Approx(0.41802329313067355).epsilon(1e-12));
    // Closed form: 1 - t exp(-t) / (1 - exp(-t)).
    double t = 0.37;
    double expect = 1.0 - t * std::exp(-t) / (-std::expm1(-t));
    CHECK(post_selection_nli_variance(t, 1.0, p) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("conditional distortion energy approaches the unconditional mean") {
    auto p = params(0.01, 0.001, 100, 3.0);
    double power = 0.8;
    double mean = 0.01 * power * power * power;
    CHECK(post_selection_nli_variance(1e3 * mean, power, p) ==
          doctest::Approx(mean).epsilon(1e-12));
    // Monotone in the threshold.
    double lo = post_selection_nli_variance(0.2 * mean, power, p);
    double mid = post_selection_nli_variance(1.0 * mean, power, p);
    double hi = post_selection_nli_variance(5.0 * mean, power, p);
    CHECK(lo < mid);
    CHECK(mid < hi);
    CHECK(hi < mean);
}

TEST_CASE("selected rate reduces to the unselected rate for loose thresholds") {
    auto p = params(0.01, 0.001, 100, 2.0);
    for (double power : {0.1, 0.368, 2.0}) {
        double mean = 0.01 * power * power * power;
        CHECK(air_with_selection(power, 1e5 * mean, p) ==
              doctest::Approx(gaussian_air(power, p)).epsilon(1e-9));
    }
}

TEST_CASE("output power conventions shift the rate by the documented amounts") {
    auto p = params(0.01, 0.001, 100, 1.0);
    double power = 2.0;
    double gl = optimal_threshold(p);
    double v = post_selection_nli_variance(gl, power, p);
    double base = air_with_selection(power, gl, p, OutputPowerConvention::SignalNoiseDistortion);
    double sn = air_with_selection(power, gl, p, OutputPowerConvention::SignalNoise);
    double anti =
        air_with_selection(power, gl, p, OutputPowerConvention::DistortionAnticorrelated);
    double delta = std::numbers::log2e * v / (power + 0.001 + v);
    CHECK(base - sn == doctest::Approx(delta).epsilon(1e-12));
    CHECK(base - anti == doctest::Approx(2.0 * delta).epsilon(1e-12));
    CHECK(sn > anti);
}

TEST_CASE("threshold rule is exact") {
    auto p = params(0.01, 1.4e-3, 10, 2.0);
    CHECK(optimal_threshold(p) == doctest::Approx(5.25e-4).epsilon(1e-15));
    CHECK_THROWS_AS(optimal_threshold(params(0.01, 1e-3, 10, 10.0)), std::domain_error);
    CHECK_THROWS_AS(optimal_threshold(params(0.01, 0.0, 10, 2.0)), std::domain_error);
}

TEST_CASE("regime classification follows 3 shape vs block length") {
    CHECK(classify_regime(100, 1.0) == SelectionRegime::UnboundedGrowth);
    CHECK(classify_regime(100, 33.0) == SelectionRegime::UnboundedGrowth);
    CHECK(classify_regime(99, 33.0) == SelectionRegime::Saturating);
    CHECK(classify_regime(100, 34.0) == SelectionRegime::PeakyDecay);
    CHECK(classify_regime(100, 100.0 / 3.0) == SelectionRegime::Saturating);
    CHECK(classify_regime(16, 5.4) == SelectionRegime::PeakyDecay);
    CHECK(classify_regime(16, 5.3) == SelectionRegime::UnboundedGrowth);
    CHECK_THROWS(classify_regime(0, 1.0));
    CHECK_THROWS(classify_regime(10, 0.0));
}

TEST_CASE("high-power slope per octave follows the regime") {
    const double p_hi = 1e5;
    auto slope = [&](uint32_t n, double shape) {
        auto p = params(0.01, 0.001, n, shape);
        double gl = optimal_threshold(p);
        return air_with_selection(2.0 * p_hi, gl, p) - air_with_selection(p_hi, gl, p);
    };
    // Growth: 1 - 3 shape / n bits per power doubling.
    CHECK(slope(100, 1.0) == doctest::Approx(1.0 - 3.0 / 100.0).epsilon(0.02));
    CHECK(slope(100, 20.0) == doctest::Approx(1.0 - 60.0 / 100.0).epsilon(0.05));
    // Saturation: flat.
    CHECK(std::fabs(slope(99, 33.0)) < 0.02);
    // Decay: negative.
    CHECK(slope(100, 34.0) < -0.005);
}

TEST_CASE("deep-tail log acceptance matches the leading asymptote") {
    auto check_tail = [](double shape, double xi_target) {
        auto p = params(0.01, 0.0, 128, shape);
        double power = 10.0;
        double mean = 0.01 * power * power * power;
        double gl = xi_target * mean / shape;
        double got = log2_acceptance_rate(gl, power, p);
        double expect = (shape * std::log(xi_target) - std::lgamma(shape + 1.0) +
                         std::log1p(-shape * xi_target / (shape + 1.0))) *
                        std::numbers::log2e;
        CHECK(got == doctest::Approx(expect).epsilon(1e-8));
        // Linear-domain rate underflows to zero there; the log form must not.
        CHECK(std::isfinite(got));
    };
    check_tail(64.0, 1e-5);
    check_tail(30.0, 3.1e-9);
    // Consistency with the linear form where both are representable.
    auto p = params(0.01, 0.0, 128, 4.0);
    double gl = 0.5 * 0.01 / 4.0;
    CHECK(std::exp2(log2_acceptance_rate(gl, 1.0, p)) ==
          doctest::Approx(acceptance_rate(gl, 1.0, p)).epsilon(1e-12));
}

TEST_CASE("parameter validation rejects out-of-range values") {
    CHECK_THROWS(params(-0.01, 0.001, 100, 1.0).validate());
    CHECK_THROWS(params(0.01, -1.0, 100, 1.0).validate());
    CHECK_THROWS(params(0.01, 0.001, 0, 1.0).validate());
    CHECK_THROWS(params(0.01, 0.001, 100, 0.0).validate());
    CHECK_THROWS(params(0.01, 0.001, 100, 101.0).validate());
    CHECK_NOTHROW(params(0.0, 0.0, 1, 1.0).validate());
    CHECK_THROWS_AS(acceptance_rate(0.1, 1.0, params(0.0, 0.001, 100, 1.0)), std::domain_error);
}

TEST_CASE("surrogate channel is the identity in the zero-noise zero-distortion limit") {
    SymbolSequence x = gaussian_sequence({0.5, 256, 1, 77});
    SymbolSequence y = synthetic_block_channel(x, params(0.0, 0.0, 256, 1.0), 5);
    REQUIRE(y.size() == x.size());
    for (size_t i = 0; i < x.size(); ++i) CHECK(y.pol(0)[i] == x.pol(0)[i]);
}

TEST_CASE("surrogate channel is reproducible and its cost ignores additive noise") {
    SymbolSequence x = gaussian_sequence({0.5, 128, 1, 78});
    auto p_noisy = params(0.02, 0.004, 128, 2.0);
    SymbolSequence y1 = synthetic_block_channel(x, p_noisy, 9);
    SymbolSequence y2 = synthetic_block_channel(x, p_noisy, 9);
    for (size_t i = 0; i < x.size(); ++i) CHECK(y1.pol(0)[i] == y2.pol(0)[i]);

    // The cost replays only the distortion substream, so it is identical
    // whether or not the parameters carry additive noise.
    CHECK(synthetic_block_cost(x, p_noisy, 9) ==
          synthetic_block_cost(x, params(0.02, 0.0, 128, 2.0), 9));

    // And it equals the residual energy of the noiseless output exactly.
    SymbolSequence yq = synthetic_block_channel(x, params(0.02, 0.0, 128, 2.0), 9);
    double acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i) acc += std::norm(yq.pol(0)[i] - x.pol(0)[i]);
    CHECK(synthetic_block_cost(x, p_noisy, 9) ==
          doctest::Approx(acc / static_cast<double>(x.size())).epsilon(1e-15));
}

TEST_CASE("surrogate additive noise has the configured variance") {
    auto p = params(0.0, 0.003, 64, 1.0);
    double acc = 0.0;
    const size_t blocks = 2000, n = 64;
    for (size_t b = 0; b < blocks; ++b) {
        SymbolSequence x = gaussian_sequence({1.0, n, 1, 1000 + b});
        SymbolSequence y = synthetic_block_channel(x, p, 2000 + b);
        for (size_t i = 0; i < n; ++i) acc += std::norm(y.pol(0)[i] - x.pol(0)[i]);
    }
    double mean = acc / static_cast<double>(blocks * n);
    // Per-symbol noise energy is exponential with sd = variance, so the
    // sample mean has sd sigma_w2 / sqrt(blocks * n).
    double sd = 0.003 / std::sqrt(static_cast<double>(blocks * n));
    CHECK(std::fabs(mean - 0.003) < 5.0 * sd);
}

TEST_CASE("surrogate block costs follow the configured gamma law") {
    const double a = 0.01, shape = 3.0;
    const size_t n = 64, blocks = 4000;
    auto p = params(a, 0.0, n, shape);
    SymbolSequence x = constant_block(n, 1.0); // fixed power 1, so mean cost is a
    std::vector<double> costs(blocks);
    for (size_t b = 0; b < blocks; ++b) costs[b] = synthetic_block_cost(x, p, 31 + b);

    double mean = 0.0;
    for (double c : costs) mean += c;
    mean /= static_cast<double>(blocks);
    double sd_mean = a / std::sqrt(shape * static_cast<double>(blocks));
    CHECK(std::fabs(mean - a) < 5.0 * sd_mean);

    // Probability integral transform: the gamma CDF of each cost must be
    // uniform. Chi-square over 20 equiprobable bins, 1% critical value.
    std::vector<size_t> bins(20, 0);
    for (double c : costs) {
        double u = regularized_lower_gamma(shape, shape * c / a);
        auto bin = std::min(static_cast<size_t>(u * 20.0), size_t{19});
        ++bins[bin];
    }
    double expect = static_cast<double>(blocks) / 20.0;
    double chi2 = 0.0;
    for (size_t count : bins) {
        double d = static_cast<double>(count) - expect;
        chi2 += d * d / expect;
    }
    CHECK(chi2 < 36.19);
}

TEST_CASE("surrogate acceptance fraction tracks the closed-form rate") {
    const double a = 0.02, shape = 2.0;
    const size_t n = 32, blocks = 4000;
    auto p = params(a, 0.0, n, shape);
    SymbolSequence x = constant_block(n, 1.0);
    double gl = 0.8 * a; // moderate threshold
    double expect = acceptance_rate(gl, 1.0, p);
    size_t hits = 0;
    for (size_t b = 0; b < blocks; ++b)
        if (synthetic_block_cost(x, p, 900 + b) < gl) ++hits;
    double frac = static_cast<double>(hits) / static_cast<double>(blocks);
    double sd = std::sqrt(expect * (1.0 - expect) / static_cast<double>(blocks));
    CHECK(std::fabs(frac - expect) < 5.0 * sd);
}

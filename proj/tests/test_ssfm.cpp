#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <omp.h>
#include <vector>

#include "fiberlab/rng.hpp"
#include "fiberlab/signal.hpp"
#include "fiberlab/ssfm.hpp"
#include "fiberlab/txrx.hpp"

using namespace fiberlab;

namespace {

Waveform random_waveform(size_t samples, int pols, double rate, double power, uint64_t seed) {
    SymbolSequence x = gaussian_sequence({power, samples, pols, seed});
    Waveform w;
    w.sampling_rate = rate;
    w.pols.resize(static_cast<size_t>(pols));
    for (int p = 0; p < pols; ++p) w.pols[static_cast<size_t>(p)] = x.pol(p);
    return w;
}

double rms_diff(const Waveform& a, const Waveform& b) {
    double acc = 0.0, ref = 0.0;
    for (int p = 0; p < a.pol_count(); ++p)
        for (size_t i = 0; i < a.size(); ++i) {
            acc += std::norm(a.pols[static_cast<size_t>(p)][i] -
                             b.pols[static_cast<size_t>(p)][i]);
            ref += std::norm(b.pols[static_cast<size_t>(p)][i]);
        }
    return std::sqrt(acc / ref);
}

LinkSpec short_link(double beta2, double gamma, double length_km) {
    LinkSpec link;
    link.alpha_db_km = 0.2;
    link.beta2_ps2_km = beta2;
    link.gamma_w_km = gamma;
    link.length_km = length_km;
    link.nsp = 1.0;
    link.carrier_thz = 193.41;
    return link;
}

} // namespace

TEST_CASE("linear noiseless propagation plus compensation is the identity") {
    Waveform w = random_waveform(4096, 1, 100.0, 2.0, 1);
    Waveform ref = w;
    LinkSpec link = short_link(21.7, 0.0, 10.0);
    propagate(w, link, {500.0, false}, 0);
    dispersion_compensate(w, link);
    CHECK(rms_diff(w, ref) < 1e-12);
}

TEST_CASE("dispersion-free propagation matches the pointwise rotation") {
    LinkSpec link = short_link(0.0, 1.27, 80.0);

    Waveform w = random_waveform(512, 1, 100.0, 4.0, 2);
    Waveform ref = w;
    propagate(w, link, {500.0, false}, 0);
    for (size_t i = 0; i < w.size(); ++i) {
        double phase = 1.27e-3 * std::norm(ref.pols[0][i]) * 80.0;
        cdouble expect = ref.pols[0][i] * cdouble{std::cos(phase), std::sin(phase)};
        CHECK(std::abs(w.pols[0][i] - expect) < 1e-9);
    }

    Waveform d = random_waveform(512, 2, 100.0, 4.0, 3);
    Waveform dref = d;
    propagate(d, link, {500.0, false}, 0);
    for (size_t i = 0; i < d.size(); ++i) {
        double joint = std::norm(dref.pols[0][i]) + std::norm(dref.pols[1][i]);
        double phase = (8.0 / 9.0) * 1.27e-3 * joint * 80.0;
        cdouble rot{std::cos(phase), std::sin(phase)};
        CHECK(std::abs(d.pols[0][i] - dref.pols[0][i] * rot) < 1e-9);
        CHECK(std::abs(d.pols[1][i] - dref.pols[1][i] * rot) < 1e-9);
    }
}

TEST_CASE("noiseless propagation conserves energy") {
    Waveform w = random_waveform(4096, 2, 100.0, 5.0, 4);
    double before = mean_sample_power(w);
    propagate(w, short_link(21.7, 1.27, 20.0), {500.0, false}, 0);
    CHECK(mean_sample_power(w) == doctest::Approx(before).epsilon(1e-11));
}

TEST_CASE("backpropagation inverts the noiseless channel") {
    LinkSpec link = short_link(21.7, 1.27, 25.0);
    Waveform w = random_waveform(4096, 2, 100.0, 8.0, 5);
    Waveform ref = w;
    propagate(w, link, {500.0, false}, 0);
    CHECK(rms_diff(w, ref) > 1e-3); // the channel actually distorted it
    backpropagate(w, link, {500.0, false});
    CHECK(rms_diff(w, ref) < 1e-10);
}

TEST_CASE("backpropagation of a linear channel equals dispersion compensation") {
    LinkSpec link = short_link(21.7, 0.0, 10.0);
    Waveform w = random_waveform(2048, 1, 100.0, 2.0, 6);
    Waveform via_cdc = w;
    Waveform via_dbp = w;
    propagate(via_cdc, link, {500.0, false}, 0);
    propagate(via_dbp, link, {500.0, false}, 0);
    dispersion_compensate(via_cdc, link);
    backpropagate(via_dbp, link, {500.0, false});
    CHECK(rms_diff(via_dbp, via_cdc) < 1e-10);
}

TEST_CASE("splitting error shrinks quadratically with the step") {
    LinkSpec link = short_link(21.7, 1.27, 50.0);
    SymbolSequence x = gaussian_sequence({10.0, 1024, 1, 7});
    Waveform base = modulate(x, 200.0, 50.0, 0.0);

    auto run = [&](double step_m) {
        Waveform w = base;
        propagate(w, link, {step_m, false}, 0);
        return w;
    };
    Waveform fine = run(62.5);
    double e_coarse = rms_diff(run(1000.0), fine);
    double e_half = rms_diff(run(500.0), fine);
    CHECK(e_half < e_coarse);
    double ratio = e_coarse / e_half;
    CHECK(ratio > 2.5);
    CHECK(ratio < 6.0);
}

TEST_CASE("accumulated noise power in the receiver band matches the budget") {
    LinkSpec link = short_link(21.7, 0.0, 1000.0);
    const double fs = 100.0, rate = 50.0;
    const size_t symbols = 1 << 14;

    SymbolSequence zeros(2, symbols);
    Waveform w = modulate(zeros, fs, rate, 0.0);
    propagate(w, link, {500.0, true}, 99);
    dispersion_compensate(w, link);
    SymbolSequence rx = demodulate(w, rate, 0.0);

    double expect = ase_variance_in_band(link, rate);
    double measured = energy_per_symbol(rx) / 2.0; // per polarization
    CHECK(measured == doctest::Approx(expect).epsilon(0.03));

    // Full-band noise power per sample, in mW: the in-band fraction scales
    // with the bandwidth ratio.
    double full = mean_sample_power(w) / 2.0;
    CHECK(full == doctest::Approx(expect * fs / rate).epsilon(0.03));
}

TEST_CASE("noise is reproducible by seed and differs across seeds") {
    LinkSpec link = short_link(21.7, 1.27, 5.0);
    Waveform a = random_waveform(1024, 2, 100.0, 1.0, 8);
    Waveform b = a;
    Waveform c = a;
    propagate(a, link, {500.0, true}, 42);
    propagate(b, link, {500.0, true}, 42);
    propagate(c, link, {500.0, true}, 43);
    CHECK(rms_diff(a, b) == 0.0);
    CHECK(rms_diff(a, c) > 1e-6);
}

TEST_CASE("propagation output is identical for any worker count") {
    LinkSpec link = short_link(21.7, 1.27, 5.0);
    Waveform w1 = random_waveform(2048, 2, 100.0, 3.0, 9);
    Waveform w3 = w1;
    omp_set_num_threads(1);
    propagate(w1, link, {500.0, true}, 11);
    omp_set_num_threads(3);
    propagate(w3, link, {500.0, true}, 11);
    for (int p = 0; p < 2; ++p)
        for (size_t i = 0; i < w1.size(); ++i)
            CHECK(w1.pols[static_cast<size_t>(p)][i] == w3.pols[static_cast<size_t>(p)][i]);
}

TEST_CASE("step size must tile the span") {
    LinkSpec link = short_link(21.7, 1.27, 10.0);
    CHECK_THROWS(SsfmSpec{300.0, false}.validate(link));
    CHECK_NOTHROW(SsfmSpec{500.0, false}.validate(link));
    CHECK_THROWS(SsfmSpec{-1.0, false}.validate(link));
}

TEST_CASE("link validation and units") {
    LinkSpec link;
    CHECK(link.alpha_linear_per_m() == doctest::Approx(0.2 * std::log(10.0) / 10.0 * 1e-3));
    link.length_km = -1.0;
    CHECK_THROWS(link.validate());
}

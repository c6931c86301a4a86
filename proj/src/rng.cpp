#include "fiberlab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fiberlab {

namespace {

// splitmix64 finalizer; full-period avalanche mix.
uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

uint64_t derive_seed(uint64_t base, uint64_t tag0, uint64_t tag1, uint64_t tag2) {
    uint64_t s = mix64(base ^ 0x6a09e667f3bcc909ULL);
    s = mix64(s ^ mix64(tag0));
    s = mix64(s ^ mix64(tag1 + 0x3c6ef372fe94f82bULL));
    s = mix64(s ^ mix64(tag2 + 0xa54ff53a5f1d36f1ULL));
    return s;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u = uniform_pos();
    double v = uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    double a = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::complex<double> Rng::complex_normal() {
    // Fresh Box-Muller pair per complex draw; E{|z|^2} = 1.
    double u = uniform_pos();
    double v = uniform();
    double r = std::sqrt(-std::log(u)); // sqrt(-2 ln u) * sqrt(1/2)
    double a = 2.0 * std::numbers::pi * v;
    return {r * std::cos(a), r * std::sin(a)};
}

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
    if (shape < 1.0) {
        // Boost to shape+1, then apply the standard power correction.
        double g = gamma(shape + 1.0);
        return g * std::pow(uniform_pos(), 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal();
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = uniform_pos();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

uint64_t Rng::below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("below(0)");
    // Rejection from the top keeps the draw exactly uniform.
    uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound + 1) % bound;
    for (;;) {
        uint64_t r = eng_();
        if (r <= limit) return r % bound;
    }
}

} // namespace fiberlab

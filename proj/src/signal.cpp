#include "fiberlab/signal.hpp"

#include <cmath>
#include <stdexcept>

#include "fiberlab/rng.hpp"

namespace fiberlab {

SymbolSequence::SymbolSequence(int pol_count, size_t n) {
    if (pol_count != 1 && pol_count != 2)
        throw std::invalid_argument("pol_count must be 1 or 2");
    pols_.assign(static_cast<size_t>(pol_count), std::vector<cdouble>(n));
}

void SymbolSequence::append(const SymbolSequence& other) {
    if (pol_count() == 0) {
        *this = other;
        return;
    }
    if (other.pol_count() != pol_count())
        throw std::invalid_argument("polarization count mismatch in append");
    for (int p = 0; p < pol_count(); ++p)
        pols_[static_cast<size_t>(p)].insert(pols_[static_cast<size_t>(p)].end(),
                                             other.pol(p).begin(), other.pol(p).end());
}

SymbolSequence SymbolSequence::slice(size_t begin, size_t count) const {
    if (begin + count > size()) throw std::out_of_range("slice past end");
    SymbolSequence out(pol_count(), count);
    for (int p = 0; p < pol_count(); ++p)
        for (size_t i = 0; i < count; ++i) out.pol(p)[i] = pol(p)[begin + i];
    return out;
}

void SymbolSequence::scale(double amplitude_factor) {
    for (auto& pol : pols_)
        for (auto& x : pol) x *= amplitude_factor;
}

SymbolSequence gaussian_sequence(const SourceConfig& cfg) {
    if (!(cfg.power >= 0.0)) throw std::invalid_argument("source power must be >= 0");
    if (cfg.length == 0) throw std::invalid_argument("source length must be positive");
    SymbolSequence x(cfg.pol_count, cfg.length);
    double amp = std::sqrt(cfg.power);
    for (int p = 0; p < cfg.pol_count; ++p) {
        Rng rng(derive_seed(cfg.seed, seed_tag::tx_symbols, static_cast<uint64_t>(p)));
        for (size_t i = 0; i < cfg.length; ++i) x.pol(p)[i] = amp * rng.complex_normal();
    }
    return x;
}

double energy_per_symbol(const SymbolSequence& x) {
    if (x.size() == 0) throw std::invalid_argument("energy of empty sequence");
    double acc = 0.0;
    for (int p = 0; p < x.pol_count(); ++p)
        for (const auto& s : x.pol(p)) acc += std::norm(s);
    return acc / static_cast<double>(x.size());
}

SymbolSequence concat_sequences(const std::vector<SymbolSequence>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("concat of zero blocks");
    SymbolSequence out = blocks.front();
    for (size_t b = 1; b < blocks.size(); ++b) out.append(blocks[b]);
    return out;
}

double mean_sample_power(const Waveform& w) {
    if (w.size() == 0) throw std::invalid_argument("power of empty waveform");
    double acc = 0.0;
    for (const auto& pol : w.pols)
        for (const auto& s : pol) acc += std::norm(s);
    return acc / static_cast<double>(w.size());
}

} // namespace fiberlab

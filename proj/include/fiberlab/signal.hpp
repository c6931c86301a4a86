#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace fiberlab {

using cdouble = std::complex<double>;

// Block of complex symbols. Polarizations are stored as parallel arrays of
// equal length; pol_count() is 1 or 2. Amplitudes are in sqrt(mW) wherever a
// physical channel is involved; the analytic surrogate uses dimensionless
// power units.
class SymbolSequence {
public:
    SymbolSequence() = default;
    SymbolSequence(int pol_count, size_t n);

    int pol_count() const { return static_cast<int>(pols_.size()); }
    size_t size() const { return pols_.empty() ? 0 : pols_[0].size(); }

    std::vector<cdouble>& pol(int p) { return pols_.at(static_cast<size_t>(p)); }
    const std::vector<cdouble>& pol(int p) const { return pols_.at(static_cast<size_t>(p)); }

    // Appends a copy of other; polarization counts must match.
    void append(const SymbolSequence& other);

    // Copies symbols [begin, begin+count) of every polarization.
    SymbolSequence slice(size_t begin, size_t count) const;

    void scale(double amplitude_factor);

private:
    std::vector<std::vector<cdouble>> pols_;
};

// Source of independent circularly symmetric Gaussian symbols.
// power is the mean energy per symbol per polarization.
struct SourceConfig {
    double power = 1.0;
    size_t length = 0;
    int pol_count = 1;
    uint64_t seed = 0;
};

// Draws unit-power symbols from the seeded stream, then scales by
// sqrt(power); sequences at different powers but equal (length, pol, seed)
// are elementwise proportional.
SymbolSequence gaussian_sequence(const SourceConfig& cfg);

// Mean energy per symbol position: sum of |x|^2 over all polarizations
// divided by the per-polarization length.
double energy_per_symbol(const SymbolSequence& x);

// Concatenates blocks in order; all blocks must share the polarization count.
SymbolSequence concat_sequences(const std::vector<SymbolSequence>& blocks);

// Sampled complex envelope. center_offset is the carrier offset of the
// content relative to the sampling grid center, in GHz; sampling_rate in GHz.
struct Waveform {
    std::vector<std::vector<cdouble>> pols;
    double sampling_rate = 0.0;
    double center_offset = 0.0;

    int pol_count() const { return static_cast<int>(pols.size()); }
    size_t size() const { return pols.empty() ? 0 : pols[0].size(); }
};

double mean_sample_power(const Waveform& w);

} // namespace fiberlab

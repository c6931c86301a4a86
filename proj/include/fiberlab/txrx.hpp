#pragma once

#include <vector>

#include "fiberlab/signal.hpp"

namespace fiberlab {

// Frequency bands follow a half-open convention [center - B/2, center + B/2):
// a bin exactly at the lower edge belongs to the band, one at the upper edge
// does not. Adjacent channels packed at spacing == symbol rate therefore
// occupy disjoint bin sets and mux/demux round trips are exact. All offsets
// and band edges must align to the FFT bin grid of the waveform they act on.

// Ideal rectangular-spectrum pulse shaping: upsample the symbol stream to
// sampling_rate (an integer multiple of symbol_rate) and shift the band to
// center_offset. At offset 0 and sampling_rate == symbol_rate this is the
// identity. Mean sample power equals the symbol power.
Waveform modulate(const SymbolSequence& symbols, double sampling_rate, double symbol_rate,
                  double center_offset);

// Matched brick-wall filter and symbol-rate sampling; exact inverse of
// modulate for in-band content, discarding everything outside the band.
SymbolSequence demodulate(const Waveform& w, double symbol_rate, double center_offset);

// Zeroes all bins outside [center - B/2, center + B/2).
void brickwall_filter(Waveform& w, double center, double bandwidth);

// Sum of co-sampled waveforms; offsets must be pairwise distinct.
Waveform wdm_mux(const std::vector<Waveform>& channels);

// Extracts one channel: brick-wall at (center, bandwidth), then shifts the
// band to baseband. The result has center_offset 0.
Waveform wdm_demux(const Waveform& w, double center, double bandwidth);

// Spectral resampling to new_rate. The new sample count must be an integer;
// downsampling requires the content to fit the new Nyquist band (relative
// out-of-band energy below 1e-9), otherwise a NumericError is raised.
Waveform resample(const Waveform& w, double new_rate);

struct PhaseAlignment {
    SymbolSequence aligned;
    double theta = 0.0;     // removed phase, radians
    bool degenerate = false; // correlation vanished; y returned unchanged
};

// Removes the mean phase rotation between y and the reference x:
// theta = arg(sum over pols and symbols of y conj(x)).
PhaseAlignment remove_mean_phase(const SymbolSequence& y, const SymbolSequence& x);

// Frequency plan of the multiplex. Channels sit on a symmetric grid around
// zero; with four subcarriers each channel band is split into four
// quarter-rate bands on their own symmetric sub-grid.
struct WdmConfig {
    int num_channels = 1;        // odd, so a center channel exists
    double symbol_rate = 50.0;   // GBd per channel
    double channel_spacing = 50.0; // GHz
    int subcarriers = 1;         // 1 or 4

    void validate() const;
    double channel_offset(int channel) const; // channel in [0, num_channels)
    int center_channel() const { return num_channels / 2; }
    double subcarrier_rate() const { return symbol_rate / subcarriers; }
    double subcarrier_spacing() const { return symbol_rate / subcarriers; }
    // Offset of a subcarrier relative to its channel center.
    double subcarrier_offset(int subcarrier) const;
};

} // namespace fiberlab

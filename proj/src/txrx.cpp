#include "fiberlab/txrx.hpp"

#include <cmath>
#include <stdexcept>

#include "fiberlab/errors.hpp"
#include "fiberlab/fft.hpp"

namespace fiberlab {

namespace {

// Frequency expressed in bins of an N-point grid; must land on the grid.
long grid_bins(double freq, double sampling_rate, size_t n, const char* what) {
    double bins = freq / sampling_rate * static_cast<double>(n);
    double rounded = std::round(bins);
    if (std::fabs(bins - rounded) > 1e-6)
        throw std::invalid_argument(std::string(what) + " does not align to the frequency grid");
    return static_cast<long>(rounded);
}

size_t wrap_bin(long signed_bin, size_t n) {
    long m = signed_bin % static_cast<long>(n);
    if (m < 0) m += static_cast<long>(n);
    return static_cast<size_t>(m);
}

// Signed bin index of FFT bin k: [-floor(n/2), ceil(n/2)).
long signed_bin(size_t k, size_t n) {
    auto kk = static_cast<long>(k);
    if (kk >= static_cast<long>((n + 1) / 2)) kk -= static_cast<long>(n);
    return kk;
}

bool in_band(long bin, long lo, long hi) { return bin >= lo && bin < hi; }

// Half-open band edges in bins; tolerates edges off the grid.
std::pair<long, long> band_bins(double center, double bandwidth, double sampling_rate, size_t n) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    double scale = static_cast<double>(n) / sampling_rate;
    auto lo = static_cast<long>(std::ceil((center - bandwidth / 2.0) * scale - 1e-9));
    auto hi = static_cast<long>(std::ceil((center + bandwidth / 2.0) * scale - 1e-9));
    return {lo, hi};
}

void check_waveform(const Waveform& w) {
    if (w.size() == 0) throw std::invalid_argument("empty waveform");
    if (!(w.sampling_rate > 0.0)) throw std::invalid_argument("waveform needs a sampling rate");
}

} // namespace

Waveform modulate(const SymbolSequence& symbols, double sampling_rate, double symbol_rate,
                  double center_offset) {
    if (symbols.size() == 0) throw std::invalid_argument("no symbols to modulate");
    if (!(symbol_rate > 0.0) || !(sampling_rate > 0.0))
        throw std::invalid_argument("rates must be positive");
    double os_real = sampling_rate / symbol_rate;
    auto os = static_cast<size_t>(std::llround(os_real));
    if (os == 0 || std::fabs(os_real - static_cast<double>(os)) > 1e-9)
        throw std::invalid_argument("sampling rate must be an integer multiple of the symbol rate");

    size_t n = symbols.size();
    size_t nw = n * os;
    long off = grid_bins(center_offset, sampling_rate, nw, "center offset");

    Waveform w;
    w.sampling_rate = sampling_rate;
    w.center_offset = center_offset;
    w.pols.assign(static_cast<size_t>(symbols.pol_count()), {});
    for (int p = 0; p < symbols.pol_count(); ++p) {
        std::vector<cdouble> spec = symbols.pol(p);
        fft_forward(spec);
        std::vector<cdouble> wave(nw, cdouble{0.0, 0.0});
        double gain = static_cast<double>(os);
        for (size_t k = 0; k < n; ++k)
            wave[wrap_bin(signed_bin(k, n) + off, nw)] = gain * spec[k];
        fft_inverse(wave);
        w.pols[static_cast<size_t>(p)] = std::move(wave);
    }
    return w;
}

SymbolSequence demodulate(const Waveform& w, double symbol_rate, double center_offset) {
    check_waveform(w);
    double n_real = static_cast<double>(w.size()) * symbol_rate / w.sampling_rate;
    auto n = static_cast<size_t>(std::llround(n_real));
    if (n == 0 || std::fabs(n_real - static_cast<double>(n)) > 1e-9)
        throw std::invalid_argument("waveform length does not hold an integer symbol count");
    long off = grid_bins(center_offset, w.sampling_rate, w.size(), "center offset");

    SymbolSequence symbols(w.pol_count(), n);
    double gain = static_cast<double>(n) / static_cast<double>(w.size());
    for (int p = 0; p < w.pol_count(); ++p) {
        std::vector<cdouble> spec = w.pols[static_cast<size_t>(p)];
        fft_forward(spec);
        std::vector<cdouble> sym_spec(n);
        for (size_t k = 0; k < n; ++k)
            sym_spec[k] = gain * spec[wrap_bin(signed_bin(k, n) + off, w.size())];
        fft_inverse(sym_spec);
        symbols.pol(p) = std::move(sym_spec);
    }
    return symbols;
}

void brickwall_filter(Waveform& w, double center, double bandwidth) {
    check_waveform(w);
    auto [lo, hi] = band_bins(center, bandwidth, w.sampling_rate, w.size());
    for (auto& pol : w.pols) {
        fft_forward(pol);
        for (size_t k = 0; k < pol.size(); ++k)
            if (!in_band(signed_bin(k, pol.size()), lo, hi)) pol[k] = 0.0;
        fft_inverse(pol);
    }
}

Waveform wdm_mux(const std::vector<Waveform>& channels) {
    if (channels.empty()) throw std::invalid_argument("mux of zero channels");
    const Waveform& first = channels.front();
    check_waveform(first);
    for (size_t a = 0; a < channels.size(); ++a) {
        if (channels[a].size() != first.size() ||
            channels[a].sampling_rate != first.sampling_rate ||
            channels[a].pol_count() != first.pol_count())
            throw std::invalid_argument("mux inputs must share grid and polarization count");
        for (size_t b = a + 1; b < channels.size(); ++b)
            if (channels[a].center_offset == channels[b].center_offset)
                throw std::invalid_argument("mux inputs must have distinct center offsets");
    }
    Waveform out = first;
    out.center_offset = 0.0;
    for (size_t c = 1; c < channels.size(); ++c)
        for (int p = 0; p < out.pol_count(); ++p)
            for (size_t i = 0; i < out.size(); ++i)
                out.pols[static_cast<size_t>(p)][i] += channels[c].pols[static_cast<size_t>(p)][i];
    return out;
}

Waveform wdm_demux(const Waveform& w, double center, double bandwidth) {
    check_waveform(w);
    long shift = grid_bins(center, w.sampling_rate, w.size(), "demux center");
    auto [lo, hi] = band_bins(center, bandwidth, w.sampling_rate, w.size());
    Waveform out;
    out.sampling_rate = w.sampling_rate;
    out.center_offset = 0.0;
    out.pols.assign(w.pols.size(), {});
    for (size_t p = 0; p < w.pols.size(); ++p) {
        std::vector<cdouble> spec = w.pols[p];
        fft_forward(spec);
        std::vector<cdouble> shifted(spec.size(), cdouble{0.0, 0.0});
        size_t n = spec.size();
        for (size_t k = 0; k < n; ++k) {
            long sk = signed_bin(k, n);
            if (in_band(sk, lo, hi)) shifted[wrap_bin(sk - shift, n)] = spec[k];
        }
        fft_inverse(shifted);
        out.pols[p] = std::move(shifted);
    }
    return out;
}

Waveform resample(const Waveform& w, double new_rate) {
    check_waveform(w);
    if (!(new_rate > 0.0)) throw std::invalid_argument("sampling rate must be positive");
    double n_real = static_cast<double>(w.size()) * new_rate / w.sampling_rate;
    auto n_new = static_cast<size_t>(std::llround(n_real));
    if (n_new == 0 || std::fabs(n_real - static_cast<double>(n_new)) > 1e-9)
        throw std::invalid_argument("resampling must give an integer sample count");

    Waveform out;
    out.sampling_rate = new_rate;
    out.center_offset = w.center_offset;
    out.pols.assign(w.pols.size(), {});
    size_t n_old = w.size();
    long lo = -static_cast<long>(n_new / 2);
    long hi = lo + static_cast<long>(n_new);
    double gain = static_cast<double>(n_new) / static_cast<double>(n_old);
    for (size_t p = 0; p < w.pols.size(); ++p) {
        std::vector<cdouble> spec = w.pols[p];
        fft_forward(spec);
        if (n_new < n_old) {
            double in_band_energy = 0.0, total = 0.0;
            for (size_t k = 0; k < n_old; ++k) {
                double e = std::norm(spec[k]);
                total += e;
                if (in_band(signed_bin(k, n_old), lo, hi)) in_band_energy += e;
            }
            if (total > 0.0 && (total - in_band_energy) > 1e-9 * total)
                throw NumericError("downsampling would alias out-of-band content");
        }
        std::vector<cdouble> out_spec(n_new, cdouble{0.0, 0.0});
        for (size_t k = 0; k < n_old; ++k) {
            long sk = signed_bin(k, n_old);
            if (in_band(sk, lo, hi)) out_spec[wrap_bin(sk, n_new)] = gain * spec[k];
        }
        fft_inverse(out_spec);
        out.pols[p] = std::move(out_spec);
    }
    return out;
}

PhaseAlignment remove_mean_phase(const SymbolSequence& y, const SymbolSequence& x) {
    if (y.pol_count() != x.pol_count() || y.size() != x.size())
        throw std::invalid_argument("phase alignment needs matching shapes");
    cdouble corr{0.0, 0.0};
    for (int p = 0; p < y.pol_count(); ++p)
        for (size_t i = 0; i < y.size(); ++i) corr += y.pol(p)[i] * std::conj(x.pol(p)[i]);

    PhaseAlignment result;
    result.aligned = y;
    if (std::abs(corr) == 0.0) {
        result.degenerate = true;
        return result;
    }
    result.theta = std::arg(corr);
    cdouble rot{std::cos(-result.theta), std::sin(-result.theta)};
    for (int p = 0; p < y.pol_count(); ++p)
        for (auto& v : result.aligned.pol(p)) v *= rot;
    return result;
}

void WdmConfig::validate() const {
    if (num_channels < 1 || num_channels % 2 == 0)
        throw std::invalid_argument("num_channels must be odd and positive");
    if (!(symbol_rate > 0.0)) throw std::invalid_argument("symbol_rate must be positive");
    if (!(channel_spacing >= symbol_rate))
        throw std::invalid_argument("channel spacing below the symbol rate");
    if (subcarriers != 1 && subcarriers != 4)
        throw std::invalid_argument("subcarriers must be 1 or 4");
}

double WdmConfig::channel_offset(int channel) const {
    if (channel < 0 || channel >= num_channels) throw std::out_of_range("channel index");
    return (channel - (num_channels - 1) / 2) * channel_spacing;
}

double WdmConfig::subcarrier_offset(int subcarrier) const {
    if (subcarrier < 0 || subcarrier >= subcarriers) throw std::out_of_range("subcarrier index");
    return (subcarrier - (subcarriers - 1) / 2.0) * subcarrier_spacing();
}

} // namespace fiberlab

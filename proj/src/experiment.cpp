#include "fiberlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fiberlab/errors.hpp"
#include "fiberlab/rng.hpp"

namespace fiberlab {

namespace {

// Seed-chain tags private to the experiment layer; the per-task tags from
// seed_tag are applied below these.
constexpr uint64_t kPointTag = 1001;
constexpr uint64_t kBurstTag = 1002;

int scenario_subcarriers(Scenario s) { return s == Scenario::Wdm2PolSubcarrier ? 4 : 1; }

// Splits a block into consecutive quarters, quarter s appended to stream s;
// must mirror the block layout used when the blocks were selected.
void scatter_block(const SymbolSequence& block, std::vector<SymbolSequence>& streams) {
    size_t quarter = block.size() / streams.size();
    for (size_t s = 0; s < streams.size(); ++s)
        streams[s].append(block.slice(s * quarter, quarter));
}

// One channel's transmit streams for one burst, one stream per subcarrier.
std::vector<SymbolSequence> build_tx(const ExperimentSpec& spec, double symbol_power,
                                     uint64_t burst_seed, int channel) {
    const auto sc = static_cast<size_t>(scenario_subcarriers(spec.scenario));
    const size_t slots = spec.burst_symbols / sc;
    std::vector<SymbolSequence> streams;

    if (spec.store == nullptr) {
        streams.reserve(sc);
        for (size_t s = 0; s < sc; ++s) {
            SourceConfig src;
            src.power = symbol_power;
            src.length = slots;
            src.pol_count = spec.pol_count();
            src.seed = derive_seed(burst_seed, seed_tag::tx_symbols,
                                   static_cast<uint64_t>(channel), s);
            streams.push_back(gaussian_sequence(src));
        }
        return streams;
    }

    const SequenceStore& store = *spec.store;
    const size_t blocks_needed = spec.burst_symbols / store.block_length;
    const double amp = std::sqrt(symbol_power / store.selection_power);

    Rng shuffler(derive_seed(burst_seed, seed_tag::block_shuffle,
                             static_cast<uint64_t>(channel)));
    std::vector<size_t> order(store.blocks.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    shuffler.shuffle(order);

    streams.assign(sc, SymbolSequence(spec.pol_count(), 0));
    size_t cursor = 0;
    for (size_t b = 0; b < blocks_needed; ++b) {
        if (cursor == order.size()) {
            shuffler.shuffle(order);
            cursor = 0;
        }
        SymbolSequence block = store.blocks[order[cursor++]];
        block.scale(amp);
        scatter_block(block, streams);
    }
    return streams;
}

void apply_common_phase(std::vector<SymbolSequence>& rx,
                        const std::vector<SymbolSequence>& tx) {
    cdouble corr{0.0, 0.0};
    for (size_t s = 0; s < rx.size(); ++s)
        for (int p = 0; p < rx[s].pol_count(); ++p)
            for (size_t i = 0; i < rx[s].size(); ++i)
                corr += rx[s].pol(p)[i] * std::conj(tx[s].pol(p)[i]);
    if (std::abs(corr) == 0.0) return;
    double theta = std::arg(corr);
    cdouble rot{std::cos(-theta), std::sin(-theta)};
    for (auto& seq : rx)
        for (int p = 0; p < seq.pol_count(); ++p)
            for (auto& v : seq.pol(p)) v *= rot;
}

} // namespace

void GridSpec::validate() const {
    if (!(line_rate > 0.0) || !(rx_rate > 0.0))
        throw std::invalid_argument("grid rates must be positive");
    if (!(step_m > 0.0) || !(dbp_step_m > 0.0))
        throw std::invalid_argument("step sizes must be positive");
}

int ExperimentSpec::pol_count() const {
    return scenario == Scenario::SingleChannel1Pol ? 1 : 2;
}

WdmConfig ExperimentSpec::effective_wdm() const {
    WdmConfig w = wdm;
    w.subcarriers = scenario_subcarriers(scenario);
    if (scenario == Scenario::SingleChannel1Pol) {
        w.num_channels = 1;
        w.channel_spacing = std::max(w.channel_spacing, w.symbol_rate);
    }
    return w;
}

void ExperimentSpec::validate() const {
    link.validate();
    grid.validate();
    WdmConfig w = effective_wdm();
    w.validate();

    const auto sc = static_cast<size_t>(w.subcarriers);
    if (burst_symbols == 0 || burst_symbols % sc != 0)
        throw ConfigError("burst length must split across subcarriers");
    if (symbols_per_point == 0 || symbols_per_point % burst_symbols != 0)
        throw ConfigError("symbols_per_point must be a whole number of bursts");
    if (edge_discard % sc != 0)
        throw ConfigError("edge discard must split across subcarriers");
    const size_t slots = burst_symbols / sc;
    const size_t trim = edge_discard / sc;
    if (slots <= 2 * trim) throw ConfigError("edge discard swallows the whole burst");

    double occupied = (w.num_channels - 1) * w.channel_spacing + w.symbol_rate;
    if (occupied > grid.line_rate + 1e-9)
        throw ConfigError("multiplex wider than the line grid");
    if (w.symbol_rate > grid.rx_rate + 1e-9)
        throw ConfigError("channel wider than the receiver grid");

    SsfmSpec fwd{grid.step_m, true};
    fwd.validate(link);
    if (dbp) {
        SsfmSpec bwd{grid.dbp_step_m, false};
        bwd.validate(link);
    }

    if (store != nullptr) {
        if (store->blocks.empty()) throw ConfigError("sequence store holds no blocks");
        if (store->pol_count != pol_count())
            throw ConfigError("store polarization count does not match the scenario");
        if (store->block_length == 0 || burst_symbols % store->block_length != 0)
            throw ConfigError("burst length must hold whole blocks");
        if (store->block_length % sc != 0)
            throw ConfigError("block length must split across subcarriers");
        if (!(store->selection_power > 0.0))
            throw ConfigError("store selection power must be positive");
    }
}

PointResult run_point(const ExperimentSpec& spec, double power_dbm, size_t point_index) {
    spec.validate();
    const WdmConfig w = spec.effective_wdm();
    const int pols = spec.pol_count();
    const auto sc = static_cast<size_t>(w.subcarriers);
    const double channel_mw = std::pow(10.0, power_dbm / 10.0);
    const double symbol_power = channel_mw / static_cast<double>(pols) / static_cast<double>(sc);
    const size_t bursts = spec.symbols_per_point / spec.burst_symbols;
    const size_t trim = spec.edge_discard / sc;
    const double sub_rate = w.subcarrier_rate();

    PointResult result;
    result.power_dbm = power_dbm;
    result.point_seed = derive_seed(spec.seed, kPointTag, point_index);

    std::vector<SymbolSequence> xs, ys; // surviving pairs, one entry per burst
    xs.reserve(bursts);
    ys.reserve(bursts);

    for (size_t b = 0; b < bursts; ++b) {
        uint64_t burst_seed = derive_seed(result.point_seed, kBurstTag, b);

        std::vector<SymbolSequence> center_tx;
        std::vector<Waveform> channel_waves;
        channel_waves.reserve(static_cast<size_t>(w.num_channels) * sc);
        for (int c = 0; c < w.num_channels; ++c) {
            std::vector<SymbolSequence> streams = build_tx(spec, symbol_power, burst_seed, c);
            for (size_t s = 0; s < sc; ++s) {
                double offset = w.channel_offset(c) + w.subcarrier_offset(static_cast<int>(s));
                channel_waves.push_back(
                    modulate(streams[s], spec.grid.line_rate, sub_rate, offset));
            }
            if (c == w.center_channel()) center_tx = std::move(streams);
        }
        Waveform line =
            channel_waves.size() == 1 ? std::move(channel_waves[0]) : wdm_mux(channel_waves);
        line.center_offset = 0.0;

        SsfmSpec fwd{spec.grid.step_m, true};
        propagate(line, spec.link, fwd, derive_seed(burst_seed, seed_tag::channel_noise));

        Waveform rx = line;
        if (w.num_channels > 1) {
            double band = std::min(w.channel_spacing, spec.grid.rx_rate);
            rx = wdm_demux(rx, 0.0, band);
        }
        if (rx.sampling_rate != spec.grid.rx_rate) rx = resample(rx, spec.grid.rx_rate);
        if (spec.dbp) {
            SsfmSpec bwd{spec.grid.dbp_step_m, false};
            backpropagate(rx, spec.link, bwd);
        } else {
            dispersion_compensate(rx, spec.link);
        }

        std::vector<SymbolSequence> rx_streams;
        rx_streams.reserve(sc);
        for (size_t s = 0; s < sc; ++s)
            rx_streams.push_back(
                demodulate(rx, sub_rate, sc == 1 ? 0.0 : w.subcarrier_offset(static_cast<int>(s))));
        apply_common_phase(rx_streams, center_tx);

        const size_t slots = spec.burst_symbols / sc;
        SymbolSequence xb(pols, 0), yb(pols, 0);
        for (size_t s = 0; s < sc; ++s) {
            xb.append(center_tx[s].slice(trim, slots - 2 * trim));
            yb.append(rx_streams[s].slice(trim, slots - 2 * trim));
        }
        xs.push_back(std::move(xb));
        ys.push_back(std::move(yb));
    }

    SymbolSequence x_all = concat_sequences(xs);
    SymbolSequence y_all = concat_sequences(ys);
    double sigma2 = std::isnan(spec.pinned_sigma2)
                        ? optimize_metric_variance(x_all, y_all, symbol_power)
                        : spec.pinned_sigma2;

    uint32_t block_length = 1;
    uint64_t proposals = 1, accepts = 1;
    if (spec.store != nullptr) {
        block_length = spec.store->block_length;
        proposals = spec.store->proposal_count;
        accepts = spec.store->accept_count;
    }
    result.estimate =
        estimate_air(x_all, y_all, symbol_power, sigma2, block_length, proposals, accepts);

    result.burst_gross.reserve(bursts);
    for (size_t b = 0; b < bursts; ++b)
        result.burst_gross.push_back(
            estimate_air(xs[b], ys[b], symbol_power, sigma2, 1, 1, 1).gross);
    return result;
}

std::vector<PointResult> run_sweep(const ExperimentSpec& spec,
                                   const std::vector<double>& sweep_dbm) {
    std::vector<PointResult> rows;
    rows.reserve(sweep_dbm.size());
    for (size_t i = 0; i < sweep_dbm.size(); ++i)
        rows.push_back(run_point(spec, sweep_dbm[i], i));
    return rows;
}

double linear_capacity(const LinkSpec& link, double symbol_rate_ghz, double power_per_pol_mw) {
    if (!(power_per_pol_mw > 0.0)) throw std::invalid_argument("power must be positive");
    double noise = ase_variance_in_band(link, symbol_rate_ghz);
    return std::log2(1.0 + power_per_pol_mw / noise);
}

} // namespace fiberlab

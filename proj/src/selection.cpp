#include "fiberlab/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fiberlab/errors.hpp"
#include "fiberlab/kernels.hpp"
#include "fiberlab/rng.hpp"
#include "fiberlab/txrx.hpp"

namespace fiberlab {

void CostChannel::validate() const {
    link.validate();
    SsfmSpec steps{step_m, false};
    steps.validate(link);
    if (!(symbol_rate > 0.0)) throw std::invalid_argument("symbol rate must be positive");
    if (!(sampling_rate >= symbol_rate))
        throw std::invalid_argument("sampling rate below the symbol rate");
    if (subcarriers != 1 && subcarriers != 4)
        throw std::invalid_argument("subcarriers must be 1 or 4");
}

void SelectionConfig::validate() const {
    if (block_length == 0) throw std::invalid_argument("block_length must be positive");
    if (burst_symbols < block_length)
        throw std::invalid_argument("burst shorter than one block");
    if (!(symbol_power > 0.0)) throw std::invalid_argument("symbol power must be positive");
    if (pol_count != 1 && pol_count != 2)
        throw std::invalid_argument("pol_count must be 1 or 2");
    if (std::isnan(gamma_lambda)) {
        if (!(eta_target > 0.0 && eta_target <= 1.0))
            throw std::invalid_argument("eta_target must lie in (0, 1]");
    } else if (!(gamma_lambda > 0.0)) {
        throw std::invalid_argument("gamma_lambda must be positive");
    }
    if (target_accepts == 0) throw std::invalid_argument("target_accepts must be positive");
    if (max_proposals == 0) throw std::invalid_argument("max_proposals must be positive");
    if (refresh_iterations == 0)
        throw std::invalid_argument("refresh_iterations must be positive");
}

std::vector<double> residual_sqerr(const std::vector<SymbolSequence>& streams,
                                   const CostChannel& channel) {
    channel.validate();
    if (streams.size() != static_cast<size_t>(channel.subcarriers))
        throw std::invalid_argument("stream count must equal the subcarrier count");
    size_t slots = streams.front().size();
    int pols = streams.front().pol_count();
    for (const auto& s : streams)
        if (s.size() != slots || s.pol_count() != pols)
            throw std::invalid_argument("streams must share length and polarization count");
    if (slots == 0) throw std::invalid_argument("empty streams");

    double sub_rate = channel.symbol_rate / channel.subcarriers;
    std::vector<double> offsets(streams.size());
    for (size_t s = 0; s < streams.size(); ++s)
        offsets[s] = (static_cast<double>(s) - (channel.subcarriers - 1) / 2.0) * sub_rate;

    Waveform line;
    if (streams.size() == 1) {
        line = modulate(streams[0], channel.sampling_rate, sub_rate, 0.0);
    } else {
        std::vector<Waveform> waves;
        waves.reserve(streams.size());
        for (size_t s = 0; s < streams.size(); ++s)
            waves.push_back(modulate(streams[s], channel.sampling_rate, sub_rate, offsets[s]));
        line = wdm_mux(waves);
    }

    SsfmSpec ssfm{channel.step_m, false};
    propagate(line, channel.link, ssfm, 0);
    dispersion_compensate(line, channel.link);

    std::vector<SymbolSequence> rx;
    rx.reserve(streams.size());
    for (size_t s = 0; s < streams.size(); ++s)
        rx.push_back(demodulate(line, sub_rate, streams.size() == 1 ? 0.0 : offsets[s]));

    // One common phase for the whole channel, estimated across all streams
    // and polarizations.
    cdouble corr{0.0, 0.0};
    for (size_t s = 0; s < streams.size(); ++s)
        for (int p = 0; p < pols; ++p)
            for (size_t i = 0; i < slots; ++i)
                corr += rx[s].pol(p)[i] * std::conj(streams[s].pol(p)[i]);
    if (std::abs(corr) > 0.0) {
        double theta = std::arg(corr);
        cdouble rot{std::cos(-theta), std::sin(-theta)};
        for (auto& seq : rx)
            for (int p = 0; p < pols; ++p)
                for (auto& v : seq.pol(p)) v *= rot;
    }

    std::vector<double> out(slots, 0.0);
    for (size_t s = 0; s < streams.size(); ++s)
        for (int p = 0; p < pols; ++p)
            for (size_t i = 0; i < slots; ++i)
                out[i] += std::norm(rx[s].pol(p)[i] - streams[s].pol(p)[i]);
    return out;
}

double cost_energy(const SymbolSequence& block) { return energy_per_symbol(block); }

double cost_memoryless(const SymbolSequence& x, const SymbolSequence& y) {
    if (x.pol_count() != y.pol_count() || x.size() != y.size())
        throw std::invalid_argument("cost needs matching shapes");
    if (x.size() == 0) throw std::invalid_argument("empty sequences");
    double acc = 0.0;
    for (int p = 0; p < x.pol_count(); ++p)
        for (size_t i = 0; i < x.size(); ++i) acc += std::norm(y.pol(p)[i] - x.pol(p)[i]);
    return acc / static_cast<double>(x.size());
}

double threshold_from_quantile(const std::vector<double>& costs, double eta_target) {
    if (costs.empty()) throw std::invalid_argument("no costs to take a quantile of");
    if (!(eta_target > 0.0 && eta_target <= 1.0))
        throw std::invalid_argument("eta_target must lie in (0, 1]");
    auto k = static_cast<size_t>(
        std::ceil(eta_target * static_cast<double>(costs.size()) - 1e-12));
    if (k >= costs.size()) return std::numeric_limits<double>::infinity();
    std::vector<double> sorted = costs;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<ptrdiff_t>(k), sorted.end());
    return sorted[k];
}

namespace {

struct Bookkeeping {
    std::vector<SymbolSequence> accepted;
    uint64_t proposals = 0;
};

SelectionResult finish(SelectionResult res, Bookkeeping bk, const SelectionConfig& cfg,
                       double threshold) {
    if (bk.accepted.empty())
        throw StarvationError("selection accepted nothing within the proposal budget");
    res.store.pol_count = cfg.pol_count;
    res.store.block_length = cfg.block_length;
    res.store.selection_power = cfg.symbol_power;
    res.store.gamma_lambda = threshold;
    res.store.proposal_count = bk.proposals;
    res.store.accept_count = bk.accepted.size();
    res.store.blocks = std::move(bk.accepted);
    res.realized_eta =
        static_cast<double>(res.store.accept_count) / static_cast<double>(bk.proposals);
    return res;
}

// Splits a logical block into per-subcarrier quarters: quarter s of the
// symbol order goes to subcarrier s. The inverse mapping lives in the
// transmitter, which must use the same convention.
void scatter_block(const SymbolSequence& block, std::vector<SymbolSequence>& streams,
                   int subcarriers) {
    size_t quarter = block.size() / static_cast<size_t>(subcarriers);
    for (int s = 0; s < subcarriers; ++s)
        streams[static_cast<size_t>(s)].append(block.slice(static_cast<size_t>(s) * quarter,
                                                           quarter));
}

} // namespace

SelectionResult fast_select(const SelectionConfig& cfg, const CostChannel& channel) {
    cfg.validate();
    channel.validate();
    if (channel.subcarriers != 1)
        throw std::invalid_argument("sliding-window selection supports a single carrier only");

    const size_t n = cfg.block_length;
    SelectionResult res;
    Bookkeeping bk;
    double threshold = cfg.gamma_lambda;

    for (uint64_t burst = 0;; ++burst) {
        SourceConfig src;
        src.power = cfg.symbol_power;
        src.length = cfg.burst_symbols;
        src.pol_count = cfg.pol_count;
        src.seed = derive_seed(cfg.seed, seed_tag::selection_source, burst);
        SymbolSequence x = gaussian_sequence(src);

        std::vector<double> sqerr = residual_sqerr({x}, channel);
        std::vector<double> wcosts = kernels::sliding_window_costs(sqerr, n);

        if (std::isnan(threshold)) {
            threshold = threshold_from_quantile(wcosts, cfg.eta_target);
            res.threshold_degenerate =
                std::isfinite(threshold) &&
                !(*std::min_element(wcosts.begin(), wcosts.end()) < threshold);
        }

        for (size_t j = 0; j < wcosts.size(); ++j) {
            ++bk.proposals;
            res.costs.push_back(wcosts[j]);
            if (wcosts[j] < threshold) {
                bk.accepted.push_back(x.slice(j, n));
                res.accepted_costs.push_back(wcosts[j]);
            }
        }
        if (cfg.progress) cfg.progress(bk.proposals, bk.accepted.size());
        if (bk.accepted.size() >= cfg.target_accepts) break;
        if (bk.proposals >= cfg.max_proposals) {
            if (bk.accepted.empty())
                throw StarvationError("selection accepted nothing within the proposal budget");
            break;
        }
    }
    return finish(std::move(res), std::move(bk), cfg, threshold);
}

SelectionResult averaged_select(const SelectionConfig& cfg, const CostChannel& channel) {
    cfg.validate();
    channel.validate();
    const int sc = channel.subcarriers;
    const size_t n = cfg.block_length;
    const size_t guard = cfg.guard_symbols;
    if (n % static_cast<size_t>(sc) != 0 || guard % static_cast<size_t>(sc) != 0)
        throw std::invalid_argument("block and guard lengths must split across subcarriers");
    const size_t period = n + guard;
    if (cfg.burst_symbols % period != 0)
        throw std::invalid_argument("burst must hold a whole number of block periods");
    const size_t blocks_per_burst = cfg.burst_symbols / period;
    if (blocks_per_burst == 0) throw std::invalid_argument("burst holds no blocks");

    SelectionResult res;
    Bookkeeping bk;
    double threshold = cfg.gamma_lambda;
    const auto scs = static_cast<size_t>(sc);

    for (uint64_t burst = 0;; ++burst) {
        std::vector<SymbolSequence> blocks(blocks_per_burst);
        for (size_t j = 0; j < blocks_per_burst; ++j) {
            SourceConfig src;
            src.power = cfg.symbol_power;
            src.length = n;
            src.pol_count = cfg.pol_count;
            src.seed = derive_seed(cfg.seed, seed_tag::selection_source, burst, j);
            blocks[j] = gaussian_sequence(src);
        }

        std::vector<double> cost_sum(blocks_per_burst, 0.0);
        for (uint32_t it = 0; it < cfg.refresh_iterations; ++it) {
            SymbolSequence guards;
            if (guard > 0) {
                SourceConfig gsrc;
                gsrc.power = cfg.symbol_power;
                gsrc.length = blocks_per_burst * guard;
                gsrc.pol_count = cfg.pol_count;
                gsrc.seed = derive_seed(cfg.seed, seed_tag::guard_symbols, burst, it);
                guards = gaussian_sequence(gsrc);
            }

            std::vector<SymbolSequence> streams(scs, SymbolSequence(cfg.pol_count, 0));
            for (size_t j = 0; j < blocks_per_burst; ++j) {
                scatter_block(blocks[j], streams, sc);
                if (guard > 0) scatter_block(guards.slice(j * guard, guard), streams, sc);
            }

            std::vector<double> sqerr = residual_sqerr(streams, channel);
            const size_t slot_period = period / scs;
            const size_t slot_block = n / scs;
            for (size_t j = 0; j < blocks_per_burst; ++j) {
                double acc = kernels::serial::chunked_sum(sqerr.data() + j * slot_period,
                                                          slot_block);
                cost_sum[j] += acc / static_cast<double>(n);
            }
        }

        std::vector<double> costs(blocks_per_burst);
        for (size_t j = 0; j < blocks_per_burst; ++j)
            costs[j] = cost_sum[j] / static_cast<double>(cfg.refresh_iterations);

        if (std::isnan(threshold)) {
            threshold = threshold_from_quantile(costs, cfg.eta_target);
            res.threshold_degenerate =
                std::isfinite(threshold) &&
                !(*std::min_element(costs.begin(), costs.end()) < threshold);
        }

        for (size_t j = 0; j < blocks_per_burst; ++j) {
            ++bk.proposals;
            res.costs.push_back(costs[j]);
            if (costs[j] < threshold) {
                bk.accepted.push_back(blocks[j]);
                res.accepted_costs.push_back(costs[j]);
            }
        }
        if (cfg.progress) cfg.progress(bk.proposals, bk.accepted.size());
        if (bk.accepted.size() >= cfg.target_accepts) break;
        if (bk.proposals >= cfg.max_proposals) {
            if (bk.accepted.empty())
                throw StarvationError("selection accepted nothing within the proposal budget");
            break;
        }
    }
    return finish(std::move(res), std::move(bk), cfg, threshold);
}

RejectionOutcome rejection_sample(const std::function<SymbolSequence(uint64_t)>& propose,
                                  const std::function<double(const SymbolSequence&, uint64_t)>& cost,
                                  double gamma_lambda, size_t target_accepts,
                                  size_t max_proposals) {
    if (target_accepts == 0) throw std::invalid_argument("target_accepts must be positive");
    if (max_proposals == 0) throw std::invalid_argument("max_proposals must be positive");
    RejectionOutcome out;
    for (uint64_t i = 0; i < max_proposals; ++i) {
        SymbolSequence candidate = propose(i);
        double c = cost(candidate, i);
        ++out.proposals;
        if (c < gamma_lambda) {
            out.accepted.push_back(std::move(candidate));
            out.accepted_costs.push_back(c);
            if (out.accepted.size() >= target_accepts) return out;
        }
    }
    if (out.accepted.empty())
        throw StarvationError("rejection sampling accepted nothing within the proposal budget");
    return out;
}

} // namespace fiberlab

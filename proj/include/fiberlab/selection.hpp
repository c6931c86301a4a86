#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "fiberlab/seq_store.hpp"
#include "fiberlab/signal.hpp"
#include "fiberlab/ssfm.hpp"

namespace fiberlab {

// Single-channel noiseless chain used to score candidate sequences:
// modulate, propagate without noise, compensate dispersion, demodulate,
// remove the mean phase, and take per-position squared residuals.
struct CostChannel {
    LinkSpec link;
    double step_m = 500.0;
    double sampling_rate = 100.0; // GHz
    double symbol_rate = 50.0;    // GBd (whole channel)
    int subcarriers = 1;          // 1 or 4

    void validate() const;
};

// Squared residual per time slot. With one subcarrier, entry i belongs to
// symbol i; with four, entry i sums the four subcarrier symbols sharing time
// slot i (streams must have equal length). Residuals sum both polarizations.
std::vector<double> residual_sqerr(const std::vector<SymbolSequence>& streams,
                                   const CostChannel& channel);

// Mean energy per symbol of a candidate block; scoring rule for sphere-style
// selection.
double cost_energy(const SymbolSequence& block);

// Mean squared deviation per symbol between a noiseless channel output and
// the channel input.
double cost_memoryless(const SymbolSequence& x, const SymbolSequence& y);

// Threshold at the requested acceptance quantile: with K costs and
// k = ceil(eta * K), returns the (k+1)-th smallest cost (so strictly-below
// acceptance admits at most k proposals), or +infinity when k >= K.
double threshold_from_quantile(const std::vector<double>& costs, double eta_target);

struct SelectionConfig {
    size_t burst_symbols = 1 << 15; // N' proposal symbols per burst (all subcarriers)
    uint32_t block_length = 64;     // n
    double symbol_power = 0.125;    // mean energy per stored symbol per polarization, mW
    int pol_count = 1;
    double eta_target = 1e-2;       // used when gamma_lambda is NaN
    double gamma_lambda = std::numeric_limits<double>::quiet_NaN();
    size_t target_accepts = 1000;
    size_t max_proposals = 100000000; // starvation guard
    uint32_t guard_symbols = 0;       // averaged procedure only
    uint32_t refresh_iterations = 1;  // averaged procedure only
    uint64_t seed = 0;
    // Called after every burst with the running proposal/accept counts.
    std::function<void(uint64_t, uint64_t)> progress;

    void validate() const;
};

struct SelectionResult {
    SequenceStore store;               // accepted blocks with bookkeeping
    std::vector<double> costs;         // every proposal cost, proposal order
    std::vector<double> accepted_costs;
    double realized_eta = 0.0;
    bool threshold_degenerate = false; // quantile produced zero possible accepts
};

// Sliding-window selection: every window of block_length consecutive symbols
// in each burst is a proposal; windows may overlap. When gamma_lambda is NaN
// the threshold is frozen from the first burst's cost quantile. Single
// carrier only.
SelectionResult fast_select(const SelectionConfig& cfg, const CostChannel& channel);

// Block selection with randomized surroundings: bursts are split into
// disjoint blocks separated by guard_symbols fresh random symbols; each
// burst is re-propagated refresh_iterations times with redrawn guards and
// the block cost is the average of the per-pass residual means. With four
// subcarriers each block takes block_length/4 symbols per subcarrier and
// guards split the same way.
SelectionResult averaged_select(const SelectionConfig& cfg, const CostChannel& channel);

// Generic streaming accept/reject driver: draws proposal index i from
// `propose`, scores it with `cost`, and keeps it when cost < gamma_lambda.
// Throws StarvationError when max_proposals are exhausted with zero accepts.
struct RejectionOutcome {
    std::vector<SymbolSequence> accepted;
    std::vector<double> accepted_costs;
    uint64_t proposals = 0;
};
RejectionOutcome rejection_sample(const std::function<SymbolSequence(uint64_t)>& propose,
                                  const std::function<double(const SymbolSequence&, uint64_t)>& cost,
                                  double gamma_lambda, size_t target_accepts,
                                  size_t max_proposals);

} // namespace fiberlab

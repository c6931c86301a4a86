#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "fiberlab/air.hpp"
#include "fiberlab/seq_store.hpp"
#include "fiberlab/signal.hpp"
#include "fiberlab/ssfm.hpp"
#include "fiberlab/txrx.hpp"

namespace fiberlab {

enum class Scenario {
    SingleChannel1Pol,  // one channel, one polarization
    Wdm2Pol,            // full multiplex, dual polarization
    Wdm2PolSubcarrier,  // dual polarization, four subcarriers per channel
};

// Numerical grids of the transmission experiment. The line grid carries the
// whole multiplex through the fiber; the receiver grid carries the extracted
// center channel through backpropagation or dispersion compensation.
struct GridSpec {
    double line_rate = 100.0; // GHz
    double rx_rate = 100.0;   // GHz
    double step_m = 500.0;    // forward split-step
    double dbp_step_m = 500.0;

    void validate() const;
};

struct ExperimentSpec {
    Scenario scenario = Scenario::SingleChannel1Pol;
    LinkSpec link;
    WdmConfig wdm;  // symbol_rate and channel_spacing; counts follow the scenario
    GridSpec grid;
    bool dbp = false;
    const SequenceStore* store = nullptr; // null: plain Gaussian input on every channel
    size_t symbols_per_point = 1 << 16;   // per polarization, before edge discard
    size_t burst_symbols = 1 << 14;       // symbols per burst per channel
    uint32_t edge_discard = 256;          // symbols dropped at each burst end
    uint64_t seed = 0;
    // NaN: optimize the metric variance per point; otherwise use this value.
    double pinned_sigma2 = std::numeric_limits<double>::quiet_NaN();

    void validate() const;
    int pol_count() const;
    // Channel plan with the scenario's channel, polarization and subcarrier
    // counts applied.
    WdmConfig effective_wdm() const;
};

struct PointResult {
    double power_dbm = 0.0; // per channel, all polarizations together
    AirEstimate estimate;
    uint64_t point_seed = 0;
    std::vector<double> burst_gross; // per-burst gross rate at the common metric
};

// Transmits one launch power: builds per-channel bursts (Gaussian or blocks
// drawn from the store, rescaled to the launch power), propagates the
// multiplex with noise, recovers the center channel with dispersion
// compensation or backpropagation, and estimates the rate with the variance
// optimized on the received pairs.
PointResult run_point(const ExperimentSpec& spec, double power_dbm, size_t point_index);

std::vector<PointResult> run_sweep(const ExperimentSpec& spec,
                                   const std::vector<double>& sweep_dbm);

// Rate of an additive-Gaussian-noise-only link at matched bandwidth, bits
// per symbol per polarization.
double linear_capacity(const LinkSpec& link, double symbol_rate_ghz, double power_per_pol_mw);

} // namespace fiberlab

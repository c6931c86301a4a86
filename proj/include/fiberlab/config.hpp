#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fiberlab/experiment.hpp"
#include "fiberlab/ssfm.hpp"
#include "fiberlab/txrx.hpp"

namespace fiberlab {

// Typed view of a run configuration file. The format is "[section]" headers
// with "key = value" lines; '#' starts a comment. Every key has a default, a
// fixed section, and documented units; unknown sections, unknown keys, and
// duplicate keys raise ConfigError. README.md lists the full schema.
struct RunConfig {
    // [experiment]
    std::string scenario = "single_channel_1pol";
    uint64_t master_seed = 1;
    std::vector<double> sweep_dbm = {0.0};
    size_t symbols_per_point = 1 << 16;
    size_t burst_symbols = 1 << 14;
    uint32_t edge_discard = 256;
    std::vector<std::string> variants = {"benchmark"};

    LinkSpec link;  // [link]
    GridSpec grid;  // [grid]
    WdmConfig wdm;  // [wdm], channel and subcarrier counts

    // [selection]
    std::string procedure = "fast";
    uint32_t block_length = 64;
    double eta_target = 0.01;
    double gamma_lambda = std::numeric_limits<double>::quiet_NaN();
    double selection_power_dbm = 0.0; // channel power during selection
    size_t selection_burst_symbols = 1 << 15;
    uint32_t guard_symbols = 0;
    uint32_t refresh_iterations = 1;
    size_t target_accepts = 1000;
    size_t max_proposals = 100000000;
    std::string store_path;

    // [metric]: "auto" optimizes the variance per point, a number pins it
    std::string metric_sigma2 = "auto";

    // [analytic]
    double analytic_a = 0.01;
    double analytic_sigma_w2 = 0.001;
    uint32_t analytic_block_length = 100;
    std::vector<double> analytic_shapes = {1.0};
    double analytic_p_min_db = -20.0;
    double analytic_p_max_db = 10.0;
    uint32_t analytic_p_points = 61;
    std::string output_power_convention = "signal_noise_distortion";

    // [nli]
    double nli_power_dbm = -10.0;
    double nli_power_step_db = 3.0;
    uint32_t nli_block_length = 64;
    size_t nli_min_samples = 20000;

    uint64_t config_hash = 0; // over the parsed key/value pairs
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

// FNV-1a 64 of a byte string; the config hash and result manifests use it.
uint64_t fnv1a64(const std::string& bytes);

} // namespace fiberlab

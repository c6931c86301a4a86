#pragma once

#include <string>

#include "fiberlab/config.hpp"

namespace fiberlab {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;     // bad configuration or arguments
inline constexpr int kExitStarvation = 3; // selection accepted nothing
inline constexpr int kExitNumeric = 4;    // numeric failure

// Closed-form rate curves over a launch-power grid; writes
// analytic_curves.csv into out_dir.
int cmd_analytic(const RunConfig& cfg, const std::string& out_dir);

// Distortion cost statistics of the noiseless channel at two launch powers;
// writes nli_cdf.csv and nli_summary.csv into out_dir.
int cmd_nli_stats(const RunConfig& cfg, const std::string& out_dir);

// Runs sequence selection and writes the accepted blocks to the configured
// store path (out_dir/store.seqs when unset). Progress goes to stderr.
int cmd_select(const RunConfig& cfg, const std::string& out_dir);

// Transmission sweep per configured variant; writes air_<variant>.csv files
// into out_dir.
int cmd_air(const RunConfig& cfg, const std::string& out_dir);

// Prints a store header summary to stdout.
int cmd_store_info(const std::string& store_path);

// Full command-line entry point: parses arguments, dispatches, and maps
// exceptions to exit codes.
int run_cli(int argc, const char* const* argv);

} // namespace fiberlab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fiberlab/signal.hpp"

namespace fiberlab {

// On-disk container for selected symbol blocks.
//
// Layout, all fields little-endian:
//   magic            4 bytes, "SEQS" (or "WAVE" for waveform dumps)
//   version          u16, currently 1
//   pol_count        u8
//   n                u32, symbols per block per polarization
//   block_count      u32
//   selection_power  f64, mW (per polarization, at selection time)
//   gamma_lambda     f64, acceptance threshold
//   proposal_count   u64
//   accept_count     u64
//   sampling_rate    f64, GHz ("WAVE" magic only)
//   blocks           block_count blocks; each block is polarization-major,
//                    every symbol stored as (re, im) f64 pairs
struct SequenceStore {
    int pol_count = 1;
    uint32_t block_length = 0;
    double selection_power = 0.0;
    double gamma_lambda = 0.0;
    uint64_t proposal_count = 0;
    uint64_t accept_count = 0;
    std::vector<SymbolSequence> blocks;
};

void write_store(const std::string& path, const SequenceStore& store);
SequenceStore read_store(const std::string& path);

// Waveform dumps reuse the store layout under a "WAVE" magic with a single
// block per polarization set and an extra sampling_rate field.
void write_waveform(const std::string& path, const Waveform& w);
Waveform read_waveform(const std::string& path);

// Header summary, one "key = value" line per field, for store inspection.
std::string describe_store_file(const std::string& path);

// FNV-1a 64 over the whole file; used in result manifests.
uint64_t file_checksum(const std::string& path);

} // namespace fiberlab

#include "fiberlab/seq_store.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fiberlab/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "store serialization assumes a little-endian host");

namespace fiberlab {

namespace {

constexpr uint16_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw NumericError("store file truncated");
    return v;
}

struct Header {
    char magic[4];
    int pol_count;
    uint32_t n;
    uint32_t block_count;
    double selection_power;
    double gamma_lambda;
    uint64_t proposal_count;
    uint64_t accept_count;
    double sampling_rate; // WAVE only
};

void write_header(std::ostream& os, const Header& h) {
    os.write(h.magic, 4);
    put(os, kVersion);
    put(os, static_cast<uint8_t>(h.pol_count));
    put(os, h.n);
    put(os, h.block_count);
    put(os, h.selection_power);
    put(os, h.gamma_lambda);
    put(os, h.proposal_count);
    put(os, h.accept_count);
    if (std::memcmp(h.magic, "WAVE", 4) == 0) put(os, h.sampling_rate);
}

Header read_header(std::istream& is, const std::string& path) {
    Header h{};
    is.read(h.magic, 4);
    if (!is) throw NumericError("store file truncated: " + path);
    if (std::memcmp(h.magic, "SEQS", 4) != 0 && std::memcmp(h.magic, "WAVE", 4) != 0)
        throw ConfigError("not a sequence store (bad magic): " + path);
    auto version = get<uint16_t>(is);
    if (version != kVersion)
        throw ConfigError("unsupported store version " + std::to_string(version) + ": " + path);
    h.pol_count = get<uint8_t>(is);
    if (h.pol_count != 1 && h.pol_count != 2)
        throw ConfigError("store pol_count must be 1 or 2: " + path);
    h.n = get<uint32_t>(is);
    h.block_count = get<uint32_t>(is);
    h.selection_power = get<double>(is);
    h.gamma_lambda = get<double>(is);
    h.proposal_count = get<uint64_t>(is);
    h.accept_count = get<uint64_t>(is);
    if (std::memcmp(h.magic, "WAVE", 4) == 0) h.sampling_rate = get<double>(is);
    return h;
}

void write_block(std::ostream& os, const SymbolSequence& b) {
    for (int p = 0; p < b.pol_count(); ++p)
        for (const auto& s : b.pol(p)) {
            put(os, s.real());
            put(os, s.imag());
        }
}

SymbolSequence read_block(std::istream& is, int pol_count, uint32_t n) {
    SymbolSequence b(pol_count, n);
    for (int p = 0; p < pol_count; ++p)
        for (uint32_t i = 0; i < n; ++i) {
            double re = get<double>(is);
            double im = get<double>(is);
            b.pol(p)[i] = {re, im};
        }
    return b;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot open for writing: " + path);
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open for reading: " + path);
    return is;
}

} // namespace

void write_store(const std::string& path, const SequenceStore& store) {
    if (store.blocks.empty()) throw ConfigError("refusing to write empty store");
    for (const auto& b : store.blocks)
        if (b.pol_count() != store.pol_count || b.size() != store.block_length)
            throw ConfigError("store block shape mismatch");
    auto os = open_out(path);
    Header h{};
    std::memcpy(h.magic, "SEQS", 4);
    h.pol_count = store.pol_count;
    h.n = store.block_length;
    h.block_count = static_cast<uint32_t>(store.blocks.size());
    h.selection_power = store.selection_power;
    h.gamma_lambda = store.gamma_lambda;
    h.proposal_count = store.proposal_count;
    h.accept_count = store.accept_count;
    write_header(os, h);
    for (const auto& b : store.blocks) write_block(os, b);
    if (!os) throw NumericError("write failed: " + path);
}

SequenceStore read_store(const std::string& path) {
    auto is = open_in(path);
    Header h = read_header(is, path);
    if (std::memcmp(h.magic, "SEQS", 4) != 0)
        throw ConfigError("expected SEQS magic: " + path);
    SequenceStore store;
    store.pol_count = h.pol_count;
    store.block_length = h.n;
    store.selection_power = h.selection_power;
    store.gamma_lambda = h.gamma_lambda;
    store.proposal_count = h.proposal_count;
    store.accept_count = h.accept_count;
    store.blocks.reserve(h.block_count);
    for (uint32_t b = 0; b < h.block_count; ++b)
        store.blocks.push_back(read_block(is, h.pol_count, h.n));
    return store;
}

void write_waveform(const std::string& path, const Waveform& w) {
    if (w.size() == 0) throw ConfigError("refusing to write empty waveform");
    auto os = open_out(path);
    Header h{};
    std::memcpy(h.magic, "WAVE", 4);
    h.pol_count = w.pol_count();
    h.n = static_cast<uint32_t>(w.size());
    h.block_count = 1;
    h.sampling_rate = w.sampling_rate;
    write_header(os, h);
    for (const auto& pol : w.pols)
        for (const auto& s : pol) {
            put(os, s.real());
            put(os, s.imag());
        }
    if (!os) throw NumericError("write failed: " + path);
}

Waveform read_waveform(const std::string& path) {
    auto is = open_in(path);
    Header h = read_header(is, path);
    if (std::memcmp(h.magic, "WAVE", 4) != 0)
        throw ConfigError("expected WAVE magic: " + path);
    Waveform w;
    w.sampling_rate = h.sampling_rate;
    w.pols.assign(static_cast<size_t>(h.pol_count), {});
    for (auto& pol : w.pols) {
        pol.resize(h.n);
        for (auto& s : pol) {
            double re = get<double>(is);
            double im = get<double>(is);
            s = {re, im};
        }
    }
    return w;
}

std::string describe_store_file(const std::string& path) {
    auto is = open_in(path);
    Header h = read_header(is, path);
    std::ostringstream out;
    out << "format = " << std::string(h.magic, 4) << "\n"
        << "version = " << kVersion << "\n"
        << "pol_count = " << h.pol_count << "\n"
        << "block_length = " << h.n << "\n"
        << "block_count = " << h.block_count << "\n"
        << "selection_power_mw = " << h.selection_power << "\n"
        << "gamma_lambda = " << h.gamma_lambda << "\n"
        << "proposal_count = " << h.proposal_count << "\n"
        << "accept_count = " << h.accept_count << "\n";
    if (std::memcmp(h.magic, "WAVE", 4) == 0)
        out << "sampling_rate_ghz = " << h.sampling_rate << "\n";
    out << "checksum_fnv1a64 = " << std::hex << file_checksum(path) << "\n";
    return out.str();
}

uint64_t file_checksum(const std::string& path) {
    auto is = open_in(path);
    uint64_t h = 0xcbf29ce484222325ULL;
    char buf[65536];
    while (is) {
        is.read(buf, sizeof buf);
        std::streamsize got = is.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

} // namespace fiberlab

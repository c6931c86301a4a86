#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "fiberlab/errors.hpp"
#include "fiberlab/rng.hpp"
#include "fiberlab/seq_store.hpp"

using namespace fiberlab;

namespace {

std::string temp_path(const char* name) {
    return std::string("/tmp/fiberlab_test_") + name;
}

SequenceStore sample_store() {
    SequenceStore store;
    store.pol_count = 2;
    store.block_length = 5;
    store.selection_power = 0.125;
    store.gamma_lambda = 3.5e-4;
    store.proposal_count = 1000;
    store.accept_count = 3;
    Rng rng(5);
    for (int b = 0; b < 3; ++b) {
        SymbolSequence blk(2, 5);
        for (int p = 0; p < 2; ++p)
            for (auto& v : blk.pol(p)) v = rng.complex_normal();
        store.blocks.push_back(blk);
    }
    return store;
}

} // namespace

TEST_CASE("sequence store round trip is bit exact") {
    auto path = temp_path("roundtrip.seqs");
    auto store = sample_store();
    write_store(path, store);
    auto back = read_store(path);

    CHECK(back.pol_count == store.pol_count);
    CHECK(back.block_length == store.block_length);
    CHECK(back.selection_power == store.selection_power);
    CHECK(back.gamma_lambda == store.gamma_lambda);
    CHECK(back.proposal_count == store.proposal_count);
    CHECK(back.accept_count == store.accept_count);
    REQUIRE(back.blocks.size() == store.blocks.size());
    for (size_t b = 0; b < store.blocks.size(); ++b)
        for (int p = 0; p < 2; ++p)
            for (size_t i = 0; i < 5; ++i)
                CHECK(back.blocks[b].pol(p)[i] == store.blocks[b].pol(p)[i]);
    std::remove(path.c_str());
}

TEST_CASE("waveform dump carries the sampling rate") {
    auto path = temp_path("dump.wave");
    Waveform w;
    w.sampling_rate = 400.0;
    w.pols = {{{1.0, -2.0}, {0.5, 0.25}}};
    write_waveform(path, w);
    auto back = read_waveform(path);
    CHECK(back.sampling_rate == 400.0);
    REQUIRE(back.size() == 2);
    CHECK(back.pols[0][0] == cdouble{1.0, -2.0});
    CHECK(back.pols[0][1] == cdouble{0.5, 0.25});

    CHECK_THROWS_AS(read_store(path), ConfigError); // WAVE magic refused as SEQS
    std::remove(path.c_str());
}

TEST_CASE("corrupt headers are rejected") {
    auto path = temp_path("corrupt.seqs");
    write_store(path, sample_store());

    SUBCASE("bad magic") {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.write("NOPE", 4);
        f.close();
        CHECK_THROWS_AS(read_store(path), ConfigError);
    }
    SUBCASE("unsupported version") {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(4);
        uint16_t v = 9;
        f.write(reinterpret_cast<const char*>(&v), 2);
        f.close();
        CHECK_THROWS_AS(read_store(path), ConfigError);
    }
    SUBCASE("truncated body") {
        std::ifstream in(path, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 8));
        out.close();
        CHECK_THROWS_AS(read_store(path), NumericError);
    }
    std::remove(path.c_str());
}

TEST_CASE("missing file and empty store are refused") {
    CHECK_THROWS_AS(read_store("/tmp/fiberlab_does_not_exist.seqs"), ConfigError);
    SequenceStore empty;
    CHECK_THROWS_AS(write_store(temp_path("empty.seqs"), empty), ConfigError);
}

TEST_CASE("checksum reacts to any byte flip") {
    auto path = temp_path("sum.seqs");
    write_store(path, sample_store());
    uint64_t before = file_checksum(path);

    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40);
    char c;
    f.seekg(40);
    f.read(&c, 1);
    c ^= 0x01;
    f.seekp(40);
    f.write(&c, 1);
    f.close();

    CHECK(file_checksum(path) != before);
    std::remove(path.c_str());
}

TEST_CASE("store description lists header fields") {
    auto path = temp_path("describe.seqs");
    write_store(path, sample_store());
    auto text = describe_store_file(path);
    CHECK(text.find("format = SEQS") != std::string::npos);
    CHECK(text.find("block_count = 3") != std::string::npos);
    CHECK(text.find("proposal_count = 1000") != std::string::npos);
    std::remove(path.c_str());
}

#include <benchmark/benchmark.h>

#include <vector>

#include "fiberlab/kernels.hpp"
#include "fiberlab/rng.hpp"

namespace {

using fiberlab::kernels::cdouble;

std::vector<cdouble> random_block(size_t n, uint64_t seed) {
    fiberlab::Rng rng(seed);
    std::vector<cdouble> v(n);
    for (auto& x : v) x = rng.complex_normal();
    return v;
}

std::vector<double> random_reals(size_t n, uint64_t seed) {
    fiberlab::Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform() + 0.5;
    return v;
}

void BM_RotateSerial(benchmark::State& state) {
    auto n = static_cast<size_t>(state.range(0));
    auto ux = random_block(n, 1);
    auto uy = random_block(n, 2);
    for (auto _ : state) {
        fiberlab::kernels::serial::rotate_nonlinear(ux, uy, 1e-3);
        benchmark::DoNotOptimize(ux.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(n));
}

void BM_RotateParallel(benchmark::State& state) {
    auto n = static_cast<size_t>(state.range(0));
    auto ux = random_block(n, 1);
    auto uy = random_block(n, 2);
    for (auto _ : state) {
        fiberlab::kernels::rotate_nonlinear(ux, uy, 1e-3);
        benchmark::DoNotOptimize(ux.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(n));
}

void BM_SumSerial(benchmark::State& state) {
    auto n = static_cast<size_t>(state.range(0));
    auto v = random_reals(n, 3);
    for (auto _ : state) {
        double s = fiberlab::kernels::serial::chunked_sum(v.data(), v.size());
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(n));
}

void BM_SumParallel(benchmark::State& state) {
    auto n = static_cast<size_t>(state.range(0));
    auto v = random_reals(n, 3);
    for (auto _ : state) {
        double s = fiberlab::kernels::chunked_sum(v.data(), v.size());
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(n));
}

void BM_WindowSerial(benchmark::State& state) {
    auto n = static_cast<size_t>(state.range(0));
    auto v = random_reals(n, 4);
    for (auto _ : state) {
        auto w = fiberlab::kernels::serial::sliding_window_costs(v, 64);
        benchmark::DoNotOptimize(w.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(n));
}

void BM_WindowParallel(benchmark::State& state) {
    auto n = static_cast<size_t>(state.range(0));
    auto v = random_reals(n, 4);
    for (auto _ : state) {
        auto w = fiberlab::kernels::sliding_window_costs(v, 64);
        benchmark::DoNotOptimize(w.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(n));
}

} // namespace

BENCHMARK(BM_RotateSerial)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_RotateParallel)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_SumSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_SumParallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_WindowSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_WindowParallel)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();

#include "fiberlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace fiberlab {

namespace {

std::mutex plan_mutex;

fftw_plan cached_plan(size_t n, int sign) {
    static std::map<std::pair<size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // Scratch buffer only for planning; FFTW_UNALIGNED lets the plan run on
    // any caller buffer, FFTW_ESTIMATE keeps plan choice deterministic.
    std::vector<std::complex<double>> scratch(n);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(key, plan);
    return plan;
}

void execute(std::vector<std::complex<double>>& data, int sign) {
    if (data.empty()) throw std::invalid_argument("fft of empty buffer");
    fftw_plan plan = cached_plan(data.size(), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

} // namespace

void fft_forward(std::vector<std::complex<double>>& data) { execute(data, FFTW_FORWARD); }

void fft_inverse(std::vector<std::complex<double>>& data) {
    execute(data, FFTW_BACKWARD);
    double inv = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= inv;
}

double bin_frequency(size_t k, size_t n, double sampling_rate) {
    if (k >= n) throw std::out_of_range("fft bin out of range");
    double kk = static_cast<double>(k);
    double nn = static_cast<double>(n);
    if (kk >= nn / 2.0) kk -= nn;
    return kk * sampling_rate / nn;
}

} // namespace fiberlab

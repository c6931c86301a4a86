#pragma once

#include <complex>
#include <vector>

namespace fiberlab {

// In-place complex FFTs backed by cached plans. Plans are created with
// deterministic (estimate-only) planning so that results are bitwise
// reproducible run to run; plan creation is serialized internally and
// execution is safe from concurrent threads on distinct buffers.
void fft_forward(std::vector<std::complex<double>>& data);

// Inverse transform scaled by 1/N, so fft_inverse(fft_forward(x)) == x
// up to roundoff.
void fft_inverse(std::vector<std::complex<double>>& data);

// Signed frequency of FFT bin k for an N-point grid at sampling_rate (GHz):
// bins [0, N/2) map to [0, Fs/2), bins [N/2, N) map to [-Fs/2, 0).
double bin_frequency(size_t k, size_t n, double sampling_rate);

} // namespace fiberlab

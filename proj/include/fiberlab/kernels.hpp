#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fiberlab::kernels {

using cdouble = std::complex<double>;

// Hot inner loops, OpenMP-parallel. Every kernel has a serial twin in
// kernels::serial with identical arithmetic and identical results bit for
// bit regardless of thread count: elementwise kernels write disjoint slots,
// and reductions sum fixed-size chunks that are merged in index order.

// u *= exp(j * coeff * |u|^2); with two polarizations both rotate by the
// joint power (coeff carries any coupling factor and the step length).
void rotate_nonlinear(std::vector<cdouble>& ux, double coeff);
void rotate_nonlinear(std::vector<cdouble>& ux, std::vector<cdouble>& uy, double coeff);

// data[i] *= factor[i]
void multiply_inplace(std::vector<cdouble>& data, const std::vector<cdouble>& factor);

// data[i] *= s
void scale_inplace(std::vector<cdouble>& data, double s);

// Deterministic sum: fixed 4096-element chunks, chunk partials combined in
// index order.
double chunked_sum(const double* data, size_t count);

// Mean-square statistics consumed by the decoding metric:
// sq_error = sum |y - x|^2, sq_output = sum |y|^2.
struct MomentSums {
    double sq_error = 0.0;
    double sq_output = 0.0;
};
MomentSums moment_sums(const std::vector<cdouble>& x, const std::vector<cdouble>& y);

// Sliding-window mean of sqerr over windows of `window` consecutive entries:
// out[j] = mean(sqerr[j .. j+window)), one entry per window start.
std::vector<double> sliding_window_costs(const std::vector<double>& sqerr, size_t window);

namespace serial {
void rotate_nonlinear(std::vector<cdouble>& ux, double coeff);
void rotate_nonlinear(std::vector<cdouble>& ux, std::vector<cdouble>& uy, double coeff);
void multiply_inplace(std::vector<cdouble>& data, const std::vector<cdouble>& factor);
void scale_inplace(std::vector<cdouble>& data, double s);
double chunked_sum(const double* data, size_t count);
MomentSums moment_sums(const std::vector<cdouble>& x, const std::vector<cdouble>& y);
std::vector<double> sliding_window_costs(const std::vector<double>& sqerr, size_t window);
} // namespace serial

} // namespace fiberlab::kernels

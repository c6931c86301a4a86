#include "fiberlab/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace fiberlab::kernels {

namespace {

constexpr size_t kChunk = 4096;

inline void rotate_one(cdouble& u, double phase) {
    u *= cdouble{std::cos(phase), std::sin(phase)};
}

inline void rotate_pair(cdouble& ux, cdouble& uy, double coeff) {
    double phase = coeff * (std::norm(ux) + std::norm(uy));
    cdouble r{std::cos(phase), std::sin(phase)};
    ux *= r;
    uy *= r;
}

// Partial sums over fixed chunks; merge order never depends on threading.
template <typename ChunkFn, typename Acc>
void chunked_reduce(size_t count, Acc* acc, ChunkFn fn, bool parallel) {
    size_t chunks = (count + kChunk - 1) / kChunk;
    std::vector<Acc> partial(chunks);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
            size_t begin = static_cast<size_t>(c) * kChunk;
            fn(begin, std::min(begin + kChunk, count), &partial[static_cast<size_t>(c)]);
        }
    } else {
        for (size_t c = 0; c < chunks; ++c) {
            size_t begin = c * kChunk;
            fn(begin, std::min(begin + kChunk, count), &partial[c]);
        }
    }
    for (const auto& p : partial) *acc += p;
}

struct MomentAcc {
    double err = 0.0, pow = 0.0;
    MomentAcc& operator+=(const MomentAcc& o) {
        err += o.err;
        pow += o.pow;
        return *this;
    }
};

} // namespace

void rotate_nonlinear(std::vector<cdouble>& ux, double coeff) {
    long long n = static_cast<long long>(ux.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) rotate_one(ux[static_cast<size_t>(i)], coeff * std::norm(ux[static_cast<size_t>(i)]));
}

void rotate_nonlinear(std::vector<cdouble>& ux, std::vector<cdouble>& uy, double coeff) {
    if (ux.size() != uy.size()) throw std::invalid_argument("polarization length mismatch");
    long long n = static_cast<long long>(ux.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) rotate_pair(ux[static_cast<size_t>(i)], uy[static_cast<size_t>(i)], coeff);
}

void multiply_inplace(std::vector<cdouble>& data, const std::vector<cdouble>& factor) {
    if (data.size() != factor.size()) throw std::invalid_argument("multiplier length mismatch");
    long long n = static_cast<long long>(data.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) data[static_cast<size_t>(i)] *= factor[static_cast<size_t>(i)];
}

void scale_inplace(std::vector<cdouble>& data, double s) {
    long long n = static_cast<long long>(data.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) data[static_cast<size_t>(i)] *= s;
}

double chunked_sum(const double* data, size_t count) {
    double total = 0.0;
    chunked_reduce(count, &total,
                   [data](size_t b, size_t e, double* acc) {
                       double s = 0.0;
                       for (size_t i = b; i < e; ++i) s += data[i];
                       *acc = s;
                   },
                   true);
    return total;
}

MomentSums moment_sums(const std::vector<cdouble>& x, const std::vector<cdouble>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("moment_sums length mismatch");
    MomentAcc total;
    chunked_reduce(x.size(), &total,
                   [&](size_t b, size_t e, MomentAcc* acc) {
                       double err = 0.0, pow = 0.0;
                       for (size_t i = b; i < e; ++i) {
                           err += std::norm(y[i] - x[i]);
                           pow += std::norm(y[i]);
                       }
                       acc->err = err;
                       acc->pow = pow;
                   },
                   true);
    return {total.err, total.pow};
}

std::vector<double> sliding_window_costs(const std::vector<double>& sqerr, size_t window) {
    if (window == 0 || window > sqerr.size())
        throw std::invalid_argument("window must be in [1, length]");
    std::vector<double> prefix(sqerr.size() + 1, 0.0);
    for (size_t i = 0; i < sqerr.size(); ++i) prefix[i + 1] = prefix[i] + sqerr[i];
    std::vector<double> costs(sqerr.size() - window + 1);
    double inv = 1.0 / static_cast<double>(window);
    long long m = static_cast<long long>(costs.size());
#pragma omp parallel for schedule(static)
    for (long long j = 0; j < m; ++j)
        costs[static_cast<size_t>(j)] =
            (prefix[static_cast<size_t>(j) + window] - prefix[static_cast<size_t>(j)]) * inv;
    return costs;
}

namespace serial {

void rotate_nonlinear(std::vector<cdouble>& ux, double coeff) {
    for (auto& u : ux) rotate_one(u, coeff * std::norm(u));
}

void rotate_nonlinear(std::vector<cdouble>& ux, std::vector<cdouble>& uy, double coeff) {
    if (ux.size() != uy.size()) throw std::invalid_argument("polarization length mismatch");
    for (size_t i = 0; i < ux.size(); ++i) rotate_pair(ux[i], uy[i], coeff);
}

void multiply_inplace(std::vector<cdouble>& data, const std::vector<cdouble>& factor) {
    if (data.size() != factor.size()) throw std::invalid_argument("multiplier length mismatch");
    for (size_t i = 0; i < data.size(); ++i) data[i] *= factor[i];
}

void scale_inplace(std::vector<cdouble>& data, double s) {
    for (auto& v : data) v *= s;
}

double chunked_sum(const double* data, size_t count) {
    double total = 0.0;
    chunked_reduce(count, &total,
                   [data](size_t b, size_t e, double* acc) {
                       double s = 0.0;
                       for (size_t i = b; i < e; ++i) s += data[i];
                       *acc = s;
                   },
                   false);
    return total;
}

MomentSums moment_sums(const std::vector<cdouble>& x, const std::vector<cdouble>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("moment_sums length mismatch");
    MomentAcc total;
    chunked_reduce(x.size(), &total,
                   [&](size_t b, size_t e, MomentAcc* acc) {
                       double err = 0.0, pow = 0.0;
                       for (size_t i = b; i < e; ++i) {
                           err += std::norm(y[i] - x[i]);
                           pow += std::norm(y[i]);
                       }
                       acc->err = err;
                       acc->pow = pow;
                   },
                   false);
    return {total.err, total.pow};
}

std::vector<double> sliding_window_costs(const std::vector<double>& sqerr, size_t window) {
    if (window == 0 || window > sqerr.size())
        throw std::invalid_argument("window must be in [1, length]");
    std::vector<double> prefix(sqerr.size() + 1, 0.0);
    for (size_t i = 0; i < sqerr.size(); ++i) prefix[i + 1] = prefix[i] + sqerr[i];
    std::vector<double> costs(sqerr.size() - window + 1);
    double inv = 1.0 / static_cast<double>(window);
    for (size_t j = 0; j < costs.size(); ++j)
        costs[j] = (prefix[j + window] - prefix[j]) * inv;
    return costs;
}

} // namespace serial

} // namespace fiberlab::kernels

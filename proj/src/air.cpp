#include "fiberlab/air.hpp"

#include <cmath>
#include <stdexcept>

#include "fiberlab/kernels.hpp"

namespace fiberlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2E = 1.4426950408889634074;

void check_pair(const SymbolSequence& y, const SymbolSequence& x) {
    if (y.pol_count() != x.pol_count() || y.size() != x.size())
        throw std::invalid_argument("metric needs matching shapes");
    if (y.size() == 0) throw std::invalid_argument("empty sequences");
}

struct Moments {
    double sq_error = 0.0;  // sum |y - x|^2 over every dimension
    double sq_output = 0.0; // sum |y|^2
    size_t dims = 0;        // complex dimensions: symbols * polarizations
};

Moments pair_moments(const SymbolSequence& x, const SymbolSequence& y) {
    Moments m;
    for (int p = 0; p < x.pol_count(); ++p) {
        auto sums = kernels::moment_sums(x.pol(p), y.pol(p));
        m.sq_error += sums.sq_error;
        m.sq_output += sums.sq_output;
    }
    m.dims = y.size() * static_cast<size_t>(y.pol_count());
    return m;
}

// Gross rate per complex dimension, in bits, as a function of the metric
// variance, given the two sufficient moments (each already divided by the
// dimension count).
double gross_per_dim(double mean_sq_error, double mean_sq_output, double signal_power,
                     double sigma2) {
    double total = signal_power + sigma2;
    return std::log2(total / sigma2) +
           kLog2E * (mean_sq_output / total - mean_sq_error / sigma2);
}

} // namespace

double awgn_log_metric(const SymbolSequence& y, const SymbolSequence& x, double sigma2) {
    check_pair(y, x);
    if (!(sigma2 > 0.0)) throw std::invalid_argument("metric variance must be positive");
    Moments m = pair_moments(x, y);
    return -static_cast<double>(m.dims) * std::log2(kPi * sigma2) -
           kLog2E * m.sq_error / sigma2;
}

double unbiased_output_log(const SymbolSequence& y, double signal_power, double sigma2) {
    if (y.size() == 0) throw std::invalid_argument("empty sequence");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("metric variance must be positive");
    if (!(signal_power >= 0.0)) throw std::invalid_argument("signal power must not be negative");
    double sq_output = 0.0;
    for (int p = 0; p < y.pol_count(); ++p) {
        auto sums = kernels::moment_sums(y.pol(p), y.pol(p));
        sq_output += sums.sq_output;
    }
    auto dims = static_cast<double>(y.size() * static_cast<size_t>(y.pol_count()));
    double total = signal_power + sigma2;
    return -dims * std::log2(kPi * total) - kLog2E * sq_output / total;
}

double optimize_metric_variance(const SymbolSequence& x, const SymbolSequence& y,
                                double signal_power) {
    check_pair(y, x);
    if (!(signal_power > 0.0)) throw std::invalid_argument("signal power must be positive");
    Moments m = pair_moments(x, y);
    auto dims = static_cast<double>(m.dims);
    double mse = m.sq_error / dims;
    double mso = m.sq_output / dims;
    if (!(mse > 0.0)) throw std::invalid_argument("zero-error pair has no finite optimum");

    // The rate is unimodal in sigma2 and stationary near the mean squared
    // error; bracket two decades around the moment seed and golden-section.
    double lo = mse / 16.0;
    double hi = mse * 16.0;
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = gross_per_dim(mse, mso, signal_power, c);
    double fd = gross_per_dim(mse, mso, signal_power, d);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * mse; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = gross_per_dim(mse, mso, signal_power, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = gross_per_dim(mse, mso, signal_power, d);
        }
    }
    return 0.5 * (a + b);
}

AirEstimate estimate_air(const SymbolSequence& x, const SymbolSequence& y, double signal_power,
                         double sigma2, uint32_t block_length, uint64_t proposals,
                         uint64_t accepts) {
    check_pair(y, x);
    if (!(sigma2 > 0.0)) throw std::invalid_argument("metric variance must be positive");
    if (!(signal_power > 0.0)) throw std::invalid_argument("signal power must be positive");
    if (accepts == 0 || proposals < accepts)
        throw std::invalid_argument("need proposals >= accepts >= 1");
    if (block_length == 0) throw std::invalid_argument("block_length must be positive");

    Moments m = pair_moments(x, y);
    auto dims = static_cast<double>(m.dims);
    auto n_sym = static_cast<double>(y.size());

    double metric = -dims * std::log2(kPi * sigma2) - kLog2E * m.sq_error / sigma2;
    double total = signal_power + sigma2;
    double output = -dims * std::log2(kPi * total) - kLog2E * m.sq_output / total;

    AirEstimate est;
    est.gross = (metric - output) / n_sym;
    est.mismatched_entropy = -metric / n_sym;
    est.rate_loss = std::log2(static_cast<double>(proposals) / static_cast<double>(accepts)) /
                    static_cast<double>(block_length);
    est.air = est.gross - est.rate_loss;
    est.sigma2 = sigma2;
    est.signal_power = signal_power;
    est.symbols_used = y.size();
    est.eta = static_cast<double>(accepts) / static_cast<double>(proposals);
    est.block_length = block_length;
    est.pol_count = y.pol_count();
    return est;
}

} // namespace fiberlab

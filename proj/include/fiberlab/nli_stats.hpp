#pragma once

#include <cstddef>
#include <vector>

namespace fiberlab {

// Right-continuous empirical distribution of a sample set.
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> samples);

    // Fraction of samples <= x.
    double operator()(double x) const;

    const std::vector<double>& sorted() const { return sorted_; }
    size_t size() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

// Least-squares slope of log F(lambda) against log lambda over the samples
// whose empirical quantile lies in (q_lo, q_hi]. Needs at least 200 samples
// in the window and strictly positive values there.
double tail_exponent(const EmpiricalCdf& cdf, double q_lo = 0.0, double q_hi = 0.02);

// Compares two cost sample sets taken at launch powers with the given ratio:
// the per-quantile cost ratio should follow the cube of the power ratio.
struct CubicScalingReport {
    double median_ratio = 0.0;
    double iqr_lo = 0.0;
    double iqr_hi = 0.0;
    double expected = 0.0; // power_ratio^3
    bool pass = false;
};
CubicScalingReport cubic_scaling_check(const std::vector<double>& costs_lo,
                                       const std::vector<double>& costs_hi,
                                       double power_ratio, double rel_tol = 0.10);

// Gamma parameters by moment matching: shape = mean^2 / variance. Raises
// NumericError on degenerate samples (nonpositive mean or zero spread).
struct GammaFit {
    double shape = 0.0;
    double mean = 0.0;
};
GammaFit gamma_fit_moments(const std::vector<double>& samples);

// Spearman rank correlation with midranks for ties.
double spearman_rank_correlation(const std::vector<double>& a, const std::vector<double>& b);

} // namespace fiberlab

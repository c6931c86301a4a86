#include "fiberlab/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fiberlab/errors.hpp"

namespace fiberlab {

namespace {

constexpr int kMaxIter = 500;
constexpr double kRelTarget = 1e-12; // iterate past the documented 1e-10

void check_domain(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("incomplete gamma needs s > 0");
    if (!(x >= 0.0)) throw std::domain_error("incomplete gamma needs x >= 0");
}

// log of the series sum for P(s,x) = x^s e^-x / Gamma(s+1) * sum_k x^k / prod(s+1..s+k).
double log_series_sum(double s, double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= kMaxIter; ++k) {
        term *= x / (s + k);
        sum += term;
        if (term < sum * kRelTarget) return std::log(sum);
    }
    throw NumericError("incomplete gamma series failed to converge");
}

// Continued fraction for Q(s,x) = 1 - P(s,x), valid for x >= s + 1
// (modified Lentz). Returns log Q.
double log_upper_cf(double s, double x) {
    const double tiny = std::numeric_limits<double>::min() / kRelTarget;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kRelTarget)
            return -x + s * std::log(x) - std::lgamma(s) + std::log(h);
    }
    throw NumericError("incomplete gamma continued fraction failed to converge");
}

} // namespace

double regularized_lower_gamma(double s, double x) {
    check_domain(s, x);
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) {
        double lp = -x + s * std::log(x) - std::lgamma(s + 1.0) + log_series_sum(s, x);
        return std::exp(lp);
    }
    return -std::expm1(log_upper_cf(s, x));
}

double log_regularized_lower_gamma(double s, double x) {
    check_domain(s, x);
    if (x == 0.0) return -std::numeric_limits<double>::infinity();
    if (x < s + 1.0)
        return -x + s * std::log(x) - std::lgamma(s + 1.0) + log_series_sum(s, x);
    // Upper-tail region: P is order one, log1p of the small complement.
    return std::log1p(-std::exp(log_upper_cf(s, x)));
}

double lower_incomplete_gamma(double s, double x) {
    check_domain(s, x);
    if (s >= 171.0)
        throw std::domain_error("Gamma(s) overflows a double; use the regularized form");
    return regularized_lower_gamma(s, x) * std::tgamma(s);
}

} // namespace fiberlab

#include "fiberlab/nli_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fiberlab/errors.hpp"

namespace fiberlab {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw std::invalid_argument("empty sample set");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double tail_exponent(const EmpiricalCdf& cdf, double q_lo, double q_hi) {
    if (!(q_lo >= 0.0 && q_hi > q_lo && q_hi <= 1.0))
        throw std::invalid_argument("quantile window must satisfy 0 <= q_lo < q_hi <= 1");
    const auto& s = cdf.sorted();
    auto total = static_cast<double>(s.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    size_t count = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        double q = static_cast<double>(i + 1) / total;
        if (q <= q_lo || q > q_hi) continue;
        if (!(s[i] > 0.0))
            throw NumericError("tail fit needs strictly positive samples");
        double lx = std::log(s[i]);
        double ly = std::log(q);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count < 200) throw NumericError("tail fit needs at least 200 samples in the window");
    auto cnt = static_cast<double>(count);
    double denom = cnt * sxx - sx * sx;
    if (!(std::fabs(denom) > 0.0)) throw NumericError("tail fit is degenerate");
    return (cnt * sxy - sx * sy) / denom;
}

namespace {

double quantile_of_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("empty sample set");
    double pos = q * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<size_t>(std::floor(pos));
    auto hi = std::min(lo + 1, sorted.size() - 1);
    double w = pos - static_cast<double>(lo);
    return (1.0 - w) * sorted[lo] + w * sorted[hi];
}

} // namespace

CubicScalingReport cubic_scaling_check(const std::vector<double>& costs_lo,
                                       const std::vector<double>& costs_hi,
                                       double power_ratio, double rel_tol) {
    if (costs_lo.empty() || costs_hi.empty()) throw std::invalid_argument("empty sample set");
    if (!(power_ratio > 0.0)) throw std::invalid_argument("power ratio must be positive");

    // Quantile-by-quantile ratio: sorting both sets pairs equal quantiles
    // even when the sets have different sizes.
    std::vector<double> lo = costs_lo;
    std::vector<double> hi = costs_hi;
    std::sort(lo.begin(), lo.end());
    std::sort(hi.begin(), hi.end());
    size_t m = std::min(lo.size(), hi.size());
    std::vector<double> ratios(m);
    for (size_t i = 0; i < m; ++i) {
        double q = m == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(m - 1);
        double a = quantile_of_sorted(lo, q);
        double b = quantile_of_sorted(hi, q);
        if (!(a > 0.0)) throw NumericError("scaling check needs positive costs");
        ratios[i] = b / a;
    }
    std::sort(ratios.begin(), ratios.end());

    CubicScalingReport rep;
    rep.median_ratio = quantile_of_sorted(ratios, 0.5);
    rep.iqr_lo = quantile_of_sorted(ratios, 0.25);
    rep.iqr_hi = quantile_of_sorted(ratios, 0.75);
    rep.expected = power_ratio * power_ratio * power_ratio;
    rep.pass = std::fabs(rep.median_ratio / rep.expected - 1.0) <= rel_tol;
    return rep;
}

GammaFit gamma_fit_moments(const std::vector<double>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("need at least two samples");
    auto n = static_cast<double>(samples.size());
    double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    double var = ss / (n - 1.0);
    if (!(mean > 0.0) || !(var > 0.0))
        throw NumericError("sample moments are degenerate for a gamma fit");
    GammaFit fit;
    fit.mean = mean;
    fit.shape = mean * mean / var;
    return fit;
}

namespace {

std::vector<double> midranks(const std::vector<double>& v) {
    std::vector<size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    size_t i = 0;
    while (i < idx.size()) {
        size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (size_t k = i; k <= j; ++k) rank[idx[k]] = r;
        i = j + 1;
    }
    return rank;
}

} // namespace

double spearman_rank_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
    if (a.size() < 2) throw std::invalid_argument("need at least two pairs");
    std::vector<double> ra = midranks(a);
    std::vector<double> rb = midranks(b);
    auto n = static_cast<double>(a.size());
    double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double num = 0.0, da = 0.0, db = 0.0;
    for (size_t i = 0; i < ra.size(); ++i) {
        double xa = ra[i] - ma;
        double xb = rb[i] - mb;
        num += xa * xb;
        da += xa * xa;
        db += xb * xb;
    }
    if (!(da > 0.0) || !(db > 0.0))
        throw NumericError("rank correlation is undefined for constant input");
    return num / std::sqrt(da * db);
}

} // namespace fiberlab

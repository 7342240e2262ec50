#include "vsearch/stats.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>

namespace vsearch {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: zero trials");
    if (successes > trials) throw std::invalid_argument("wilson_interval: successes > trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // Clamped so that low <= p <= high.
    return {std::min(p, std::max(0.0, centre - half)), std::max(p, std::min(1.0, centre + half))};
}

MeanEstimate mean_interval(std::span<const double> values, double z) {
    if (values.empty()) throw std::invalid_argument("mean_interval: no values");
    MeanEstimate m;
    m.n = values.size();
    double mean = 0.0;
    double m2 = 0.0;
    std::uint64_t k = 0;
    for (double v : values) {
        ++k;
        const double d = v - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (v - mean);
    }
    m.mean = mean;
    m.sd = m.n > 1 ? std::sqrt(m2 / static_cast<double>(m.n - 1)) : 0.0;
    const double half = z * m.sd / std::sqrt(static_cast<double>(m.n));
    m.ci = {mean - half, mean + half};
    return m;
}

Pearson pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DegenerateInput("pearson: x and y differ in length");
    if (x.size() < 3) throw DegenerateInput("pearson: need at least 3 pairs");
    double mx = 0.0, my = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        mx += dx / k;
        my += dy / k;
        sxx += dx * (x[i] - mx);
        syy += dy * (y[i] - my);
        sxy += dx * (y[i] - my);
    }
    Pearson out;
    out.n = x.size();
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        out.degenerate = true;
        return out;
    }
    out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    return out;
}

double t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("t_two_sided_p: df must be positive");
    if (std::isinf(t)) return 0.0;
    const boost::math::students_t dist(df);
    return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))));
}

double pearson_p_value(double r, std::uint64_t n) {
    if (n < 3) throw DegenerateInput("pearson_p_value: need at least 3 pairs");
    const double df = static_cast<double>(n - 2);
    const double denom = 1.0 - r * r;
    if (denom <= 0.0) return 0.0;
    return t_two_sided_p(r * std::sqrt(df / denom), df);
}

double bonferroni(double p, std::size_t family_size) {
    return std::min(1.0, p * static_cast<double>(family_size));
}

} // namespace vsearch

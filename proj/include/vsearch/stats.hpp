#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace vsearch {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Wilson score interval for a binomial proportion. trials must be > 0.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

struct MeanEstimate {
    double mean = 0.0;
    double sd = 0.0; // sample standard deviation (n - 1); 0 for n < 2
    Interval ci;     // mean +/- z * sd / sqrt(n)
    std::uint64_t n = 0;
};

/// Normal-approximation interval for a mean. values must be non-empty.
MeanEstimate mean_interval(std::span<const double> values, double z = kZ95);

struct DegenerateInput : std::invalid_argument {
    explicit DegenerateInput(const std::string& what) : std::invalid_argument(what) {}
};

struct Pearson {
    double r = 0.0;
    std::uint64_t n = 0;
    /// x or y constant: r is undefined and reported as 0.
    bool degenerate = false;
};

/// Single-pass Pearson correlation using running co-moments.
/// Throws DegenerateInput when the spans differ in length or n < 3.
Pearson pearson(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value of Student's t with `df` degrees of freedom.
double t_two_sided_p(double t, double df);

/// Two-sided p for H0: rho = 0 given r over n pairs (t with n - 2 df).
double pearson_p_value(double r, std::uint64_t n);

/// min(1, family_size * p).
double bonferroni(double p, std::size_t family_size);

} // namespace vsearch

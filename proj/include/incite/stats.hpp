#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace incite {

struct RegressionResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_p = 1.0;
    std::size_t n = 0;
};

/// Ordinary least squares y = intercept + slope x, two-sided t test on the slope.
RegressionResult linreg(std::span<const double> x, std::span<const double> y);

struct AnovaResult {
    double f = 0.0;
    double p = 1.0;
    int df_between = 0;
    int df_within = 0;
    double ms_within = 0.0;
    bool degenerate = false;  // zero total variance, F reported as 0
};

AnovaResult one_way_anova(std::span<const std::vector<double>> groups);

struct HsdComparison {
    std::size_t group_a = 0;
    std::size_t group_b = 0;
    double mean_diff = 0.0;  // mean(a) - mean(b)
    double q = 0.0;
    double critical = 0.0;
    bool significant = false;
};

/// Tukey-Kramer comparisons for every pair a < b.
std::vector<HsdComparison> tukey_hsd(std::span<const std::vector<double>> groups, double alpha = 0.05);

struct MedianSummary {
    double median = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int replicates = 0;
    std::uint64_t seed = 0;
};

/// Sample median with a 95% percentile-bootstrap interval.
MedianSummary group_summary(std::span<const double> values, int bootstrap_n, std::uint64_t seed);

double median(std::span<const double> values);

/// Linear-interpolation quantile of sorted data (type 7).
double quantile_sorted(std::span<const double> sorted, double p);

} // namespace incite

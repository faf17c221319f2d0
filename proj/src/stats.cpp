#include "incite/stats.hpp"

#include "incite/distributions.hpp"
#include "incite/error.hpp"
#include "incite/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

namespace incite {

namespace {

// The quantile inverts a double integral; reports ask for the same few
// (alpha, k, df) triples over and over.
double cached_range_quantile(double p, int k, double df) {
    static std::mutex lock;
    static std::map<std::tuple<double, int, double>, double> cache;
    const auto key = std::make_tuple(p, k, df);
    {
        std::lock_guard guard(lock);
        if (const auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    const double q = dist::studentized_range_quantile(p, k, df);
    std::lock_guard guard(lock);
    cache.emplace(key, q);
    return q;
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

void check_finite(std::span<const double> v, const char* who) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw InvalidArgument(std::string(who) + ": non-finite value");
        }
    }
}

} // namespace

RegressionResult linreg(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InvalidArgument("linreg: x and y differ in length");
    }
    if (x.size() < 3) {
        throw InvalidArgument("linreg: need at least 3 observations");
    }
    check_finite(x, "linreg");
    check_finite(y, "linreg");
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw InvalidArgument("linreg: predictor is constant");
    }
    RegressionResult r;
    r.n = x.size();
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    if (syy == 0.0) {
        r.slope = 0.0;
        r.intercept = my;
        r.slope_p = 1.0;
        return r;
    }
    const double df = static_cast<double>(r.n) - 2.0;
    const double sse = std::max(0.0, syy - r.slope * sxy);
    if (sse == 0.0) {
        r.slope_p = 0.0;
        return r;
    }
    const double se = std::sqrt(sse / df / sxx);
    r.slope_p = dist::t_two_sided_p(r.slope / se, df);
    return r;
}

namespace {

struct GroupMoments {
    std::vector<double> means;
    double ss_between = 0.0;
    double ss_within = 0.0;
    std::size_t total = 0;
};

GroupMoments moments(std::span<const std::vector<double>> groups, const char* who) {
    if (groups.size() < 2) {
        throw InvalidArgument(std::string(who) + ": need at least 2 groups");
    }
    GroupMoments m;
    double grand = 0.0;
    for (const auto& g : groups) {
        if (g.size() < 2) {
            throw InvalidArgument(std::string(who) + ": every group needs at least 2 observations");
        }
        check_finite(g, who);
        m.means.push_back(mean_of(g));
        m.total += g.size();
        for (double v : g) {
            grand += v;
        }
    }
    grand /= static_cast<double>(m.total);
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const double d = m.means[i] - grand;
        m.ss_between += static_cast<double>(groups[i].size()) * d * d;
        for (double v : groups[i]) {
            const double e = v - m.means[i];
            m.ss_within += e * e;
        }
    }
    return m;
}

} // namespace

AnovaResult one_way_anova(std::span<const std::vector<double>> groups) {
    const auto m = moments(groups, "one_way_anova");
    AnovaResult r;
    r.df_between = static_cast<int>(groups.size()) - 1;
    r.df_within = static_cast<int>(m.total - groups.size());
    const double msb = m.ss_between / r.df_between;
    r.ms_within = m.ss_within / r.df_within;
    if (m.ss_between == 0.0 && m.ss_within == 0.0) {
        r.degenerate = true;
        return r;
    }
    if (r.ms_within == 0.0) {
        r.f = std::numeric_limits<double>::infinity();
        r.p = 0.0;
        return r;
    }
    r.f = msb / r.ms_within;
    r.p = dist::f_sf(r.f, r.df_between, r.df_within);
    return r;
}

std::vector<HsdComparison> tukey_hsd(std::span<const std::vector<double>> groups, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument("tukey_hsd: alpha must lie in (0, 1)");
    }
    const auto m = moments(groups, "tukey_hsd");
    const int k = static_cast<int>(groups.size());
    const double df = static_cast<double>(m.total - groups.size());
    const double msw = m.ss_within / df;
    const double critical = cached_range_quantile(1.0 - alpha, k, df);
    std::vector<HsdComparison> out;
    for (std::size_t a = 0; a < groups.size(); ++a) {
        for (std::size_t b = a + 1; b < groups.size(); ++b) {
            HsdComparison c;
            c.group_a = a;
            c.group_b = b;
            c.mean_diff = m.means[a] - m.means[b];
            c.critical = critical;
            const double se = std::sqrt(
                msw * (1.0 / static_cast<double>(groups[a].size()) + 1.0 / static_cast<double>(groups[b].size())) /
                2.0);
            if (se == 0.0) {
                c.q = c.mean_diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            } else {
                c.q = std::abs(c.mean_diff) / se;
            }
            c.significant = c.q > critical;
            out.push_back(c);
        }
    }
    return out;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw InvalidArgument("quantile_sorted: empty sample");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument("quantile_sorted: p must lie in [0, 1]");
    }
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidArgument("median: empty sample");
    }
    std::vector<double> copy(values.begin(), values.end());
    return kernels::median_inplace(copy);
}

MedianSummary group_summary(std::span<const double> values, int bootstrap_n, std::uint64_t seed) {
    if (values.empty()) {
        throw InvalidArgument("group_summary: empty sample");
    }
    if (bootstrap_n < 1) {
        throw InvalidArgument("group_summary: bootstrap_n must be positive");
    }
    check_finite(values, "group_summary");
    MedianSummary s;
    s.median = median(values);
    s.replicates = bootstrap_n;
    s.seed = seed;
    // Resample from sorted data so the interval does not depend on input order.
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    auto medians = kernels::parallel::bootstrap_medians(sorted, bootstrap_n, seed);
    std::sort(medians.begin(), medians.end());
    s.ci_low = quantile_sorted(medians, 0.025);
    s.ci_high = quantile_sorted(medians, 0.975);
    return s;
}

} // namespace incite

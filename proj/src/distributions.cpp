#include "incite/distributions.hpp"

#include "incite/error.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace incite::dist {

double chi_square_sf(double x, double df) {
    if (!(df > 0.0)) {
        throw InvalidArgument("chi_square_sf: df must be positive");
    }
    if (x <= 0.0) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(df), x));
}

double t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) {
        throw InvalidArgument("t_two_sided_p: df must be positive");
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    const double tail = boost::math::cdf(boost::math::complement(boost::math::students_t(df), std::abs(t)));
    return std::min(1.0, 2.0 * tail);
}

double f_sf(double f, double df1, double df2) {
    if (!(df1 > 0.0 && df2 > 0.0)) {
        throw InvalidArgument("f_sf: degrees of freedom must be positive");
    }
    if (f <= 0.0) {
        return 1.0;
    }
    if (std::isinf(f)) {
        return 0.0;
    }
    return boost::math::cdf(boost::math::complement(boost::math::fisher_f(df1, df2), f));
}

namespace {

double phi(double z) { return std::exp(-0.5 * z * z) * 0.39894228040143267794; }
double big_phi(double z) { return 0.5 * std::erfc(-z / 1.41421356237309504880); }

// Composite fixed-order Gauss-Legendre on equal panels.
template <class F>
double composite_gauss(F&& f, double lo, double hi, int panels) {
    const double width = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width;
        total += boost::math::quadrature::gauss<double, 20>::integrate(f, a, a + width);
    }
    return total;
}

// P(range of k iid standard normals <= w).
double normal_range_cdf(double w, int k) {
    if (w <= 0.0) {
        return 0.0;
    }
    auto integrand = [w, k](double z) {
        const double inside = big_phi(z) - big_phi(z - w);
        return phi(z) * std::pow(inside, k - 1);
    };
    // Beyond 8.5 standard deviations the normal density is below 1e-16.
    const double v = composite_gauss(integrand, -8.5, 8.5 + w, 24);
    return std::min(1.0, static_cast<double>(k) * v);
}

} // namespace

double studentized_range_cdf(double q, int k, double df) {
    if (k < 2) {
        throw InvalidArgument("studentized_range_cdf: k must be at least 2");
    }
    if (!(df > 0.0)) {
        throw InvalidArgument("studentized_range_cdf: df must be positive");
    }
    if (q <= 0.0) {
        return 0.0;
    }
    if (std::isinf(df) || df > 1e5) {
        return normal_range_cdf(q, k);
    }
    // s = sqrt(chi2_df / df); integrate its density against the normal-range CDF at q*s.
    const double log_norm = 0.5 * df * std::log(df) - std::lgamma(0.5 * df) - (0.5 * df - 1.0) * std::log(2.0);
    auto integrand = [&](double s) {
        if (s <= 0.0) {
            return 0.0;
        }
        const double log_density = log_norm + (df - 1.0) * std::log(s) - 0.5 * df * s * s;
        return std::exp(log_density) * normal_range_cdf(q * s, k);
    };
    const boost::math::chi_squared chi(df);
    const double s_lo = std::sqrt(boost::math::quantile(chi, 1e-15) / df);
    const double s_hi = std::sqrt(boost::math::quantile(boost::math::complement(chi, 1e-15)) / df);
    const double v = composite_gauss(integrand, s_lo, s_hi, 32);
    return std::clamp(v, 0.0, 1.0);
}

double studentized_range_quantile(double p, int k, double df) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidArgument("studentized_range_quantile: p must lie in (0, 1)");
    }
    auto f = [&](double q) { return studentized_range_cdf(q, k, df) - p; };
    double hi = 10.0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e6) {
            throw NumericError("studentized_range_quantile: root not bracketed");
        }
    }
    std::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, 1e-9, hi, boost::math::tools::eps_tolerance<double>(45), iterations);
    if (iterations >= 200) {
        throw NumericError("studentized_range_quantile: no convergence for k=" + std::to_string(k));
    }
    return 0.5 * (a + b);
}

} // namespace incite::dist

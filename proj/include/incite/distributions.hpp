#pragma once

namespace incite::dist {

/// Upper tail P(X >= x) of the chi-square distribution.
double chi_square_sf(double x, double df);

/// Two-sided p-value of a t statistic.
double t_two_sided_p(double t, double df);

/// Upper tail P(X >= f) of the F distribution.
double f_sf(double f, double df1, double df2);

/// P(Q <= q) for the studentized range of k means with df degrees of freedom.
/// Double integral: the chi/sqrt(df) density outside, the range of k standard
/// normals inside. Absolute error well below 1e-6.
double studentized_range_cdf(double q, int k, double df);

/// q such that studentized_range_cdf(q, k, df) == p.
double studentized_range_quantile(double p, int k, double df);

} // namespace incite::dist

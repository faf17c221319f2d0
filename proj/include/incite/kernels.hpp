#pragma once

// Data-parallel inner loops. Every kernel exists twice: `serial` is the
// reference implementation the tests compare against, `parallel` is the
// OpenMP version the library calls. Both must produce bit-identical output;
// the parallel versions only partition independent output cells and never
// reorder a floating-point reduction.

#include "incite/sparse.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace incite::kernels {

/// Prefix sums over weighted sorted values, shared by the Jenks layer kernels.
/// Index i covers the first i items.
struct JenksPrefix {
    std::vector<double> weight;
    std::vector<double> sum;
    std::vector<double> sum_sq;

    /// Within-class sum of squared deviations of items [begin, end).
    double sse(std::size_t begin, std::size_t end) const {
        const double w = weight[end] - weight[begin];
        const double s = sum[end] - sum[begin];
        const double v = (sum_sq[end] - sum_sq[begin]) - s * s / w;
        return v > 0.0 ? v : 0.0;
    }
};

namespace serial {

/// y = M x
void spmv(const CsrView& m, std::span<const double> x, std::span<double> y);

/// Harmonic closeness from an in-neighbour pattern: row v of `in` lists every
/// u with an edge u -> v. score(v) = sum over x != v of 1 / d(x, v).
std::vector<double> harmonic_closeness(const CsrView& in);

/// One layer of the Jenks recursion:
/// cur[j] = min_{i in [classes-1, j-1]} prev[i] + sse(i, j), for j in [classes, n].
/// The smallest minimizing i is written to split[j].
void jenks_layer(const JenksPrefix& prefix, std::size_t classes, std::span<const double> prev,
                 std::span<double> cur, std::span<std::size_t> split);

/// Sets flag[t] = 1 for every row t (not already a member) whose dot product
/// with any of the `probe` rows is >= tau. Rows are unit vectors, row-major.
void mark_similar(std::span<const double> unit_rows, std::size_t dim,
                  std::span<const std::size_t> probe, std::span<const char> member, double tau,
                  std::span<char> flag);

/// Median of each bootstrap resample. Replicate r draws from its own stream
/// seeded by (seed, r), so results do not depend on scheduling.
std::vector<double> bootstrap_medians(std::span<const double> values, int replicates,
                                      std::uint64_t seed);

} // namespace serial

namespace parallel {

void spmv(const CsrView& m, std::span<const double> x, std::span<double> y);
std::vector<double> harmonic_closeness(const CsrView& in);
void jenks_layer(const JenksPrefix& prefix, std::size_t classes, std::span<const double> prev,
                 std::span<double> cur, std::span<std::size_t> split);
void mark_similar(std::span<const double> unit_rows, std::size_t dim,
                  std::span<const std::size_t> probe, std::span<const char> member, double tau,
                  std::span<char> flag);
std::vector<double> bootstrap_medians(std::span<const double> values, int replicates,
                                      std::uint64_t seed);

} // namespace parallel

/// Median of a scratch buffer (reordered in place).
double median_inplace(std::span<double> values);

} // namespace incite::kernels

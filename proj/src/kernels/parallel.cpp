#include "incite/kernels.hpp"

#include <omp.h>

#include <limits>
#include <random>

namespace incite::kernels::parallel {

void spmv(const CsrView& m, std::span<const double> x, std::span<double> y) {
    const auto rows = static_cast<std::int64_t>(m.rows);
#pragma omp parallel for schedule(static, 1024)
    for (std::int64_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        const auto end = m.row_ptr[static_cast<std::size_t>(r) + 1];
        for (auto k = m.row_ptr[static_cast<std::size_t>(r)]; k < end; ++k) {
            acc += m.values[k] * x[m.col_idx[k]];
        }
        y[static_cast<std::size_t>(r)] = acc;
    }
}

std::vector<double> harmonic_closeness(const CsrView& in) {
    const std::size_t n = in.rows;
    std::vector<double> score(n, 0.0);
    constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
#pragma omp parallel
    {
        // Per-thread BFS state, reset through the visit list instead of refilling.
        std::vector<std::uint32_t> dist(n, unseen);
        std::vector<std::uint32_t> order;
        order.reserve(n);
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t sv = 0; sv < static_cast<std::int64_t>(n); ++sv) {
            const auto v = static_cast<std::uint32_t>(sv);
            order.clear();
            dist[v] = 0;
            order.push_back(v);
            double acc = 0.0;
            for (std::size_t head = 0; head < order.size(); ++head) {
                const auto x = order[head];
                if (x != v) {
                    acc += 1.0 / static_cast<double>(dist[x]);
                }
                for (std::size_t k = in.row_ptr[x]; k < in.row_ptr[x + 1]; ++k) {
                    const auto u = in.col_idx[k];
                    if (dist[u] == unseen) {
                        dist[u] = dist[x] + 1;
                        order.push_back(u);
                    }
                }
            }
            score[v] = acc;
            for (auto x : order) {
                dist[x] = unseen;
            }
        }
    }
    return score;
}

void jenks_layer(const JenksPrefix& prefix, std::size_t classes, std::span<const double> prev,
                 std::span<double> cur, std::span<std::size_t> split) {
    const auto n = static_cast<std::int64_t>(prev.size() - 1);
    // Cost per cell grows with j, so hand out small chunks.
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t sj = static_cast<std::int64_t>(classes); sj <= n; ++sj) {
        const auto j = static_cast<std::size_t>(sj);
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = classes - 1;
        for (std::size_t i = classes - 1; i < j; ++i) {
            const double c = prev[i] + prefix.sse(i, j);
            if (c < best) {
                best = c;
                arg = i;
            }
        }
        cur[j] = best;
        split[j] = arg;
    }
}

void mark_similar(std::span<const double> unit_rows, std::size_t dim,
                  std::span<const std::size_t> probe, std::span<const char> member, double tau,
                  std::span<char> flag) {
    const auto rows = static_cast<std::int64_t>(member.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t st = 0; st < rows; ++st) {
        const auto t = static_cast<std::size_t>(st);
        if (member[t]) {
            continue;
        }
        const double* row = unit_rows.data() + t * dim;
        for (auto p : probe) {
            const double* other = unit_rows.data() + p * dim;
            double dot = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                dot += row[d] * other[d];
            }
            if (dot >= tau) {
                flag[t] = 1;
                break;
            }
        }
    }
}

std::vector<double> bootstrap_medians(std::span<const double> values, int replicates,
                                      std::uint64_t seed) {
    const std::size_t n = values.size();
    std::vector<double> medians(static_cast<std::size_t>(replicates));
#pragma omp parallel
    {
        std::vector<double> sample(n);
#pragma omp for schedule(static)
        for (int r = 0; r < replicates; ++r) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed),
                              static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(r)};
            std::mt19937_64 rng(seq);
            for (std::size_t i = 0; i < n; ++i) {
                sample[i] = values[rng() % n];
            }
            medians[static_cast<std::size_t>(r)] = median_inplace(sample);
        }
    }
    return medians;
}

} // namespace incite::kernels::parallel

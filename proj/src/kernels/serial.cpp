#include "incite/kernels.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <random>

namespace incite::kernels {

double median_inplace(std::span<double> values) {
    const std::size_t n = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (n % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

namespace serial {

void spmv(const CsrView& m, std::span<const double> x, std::span<double> y) {
    for (std::size_t r = 0; r < m.rows; ++r) {
        double acc = 0.0;
        for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
            acc += m.values[k] * x[m.col_idx[k]];
        }
        y[r] = acc;
    }
}

std::vector<double> harmonic_closeness(const CsrView& in) {
    const std::size_t n = in.rows;
    std::vector<double> score(n, 0.0);
    constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::uint32_t> dist(n, unseen);
        std::queue<std::uint32_t> frontier;
        dist[v] = 0;
        frontier.push(static_cast<std::uint32_t>(v));
        double acc = 0.0;
        while (!frontier.empty()) {
            const auto x = frontier.front();
            frontier.pop();
            if (x != v) {
                acc += 1.0 / static_cast<double>(dist[x]);
            }
            for (std::size_t k = in.row_ptr[x]; k < in.row_ptr[x + 1]; ++k) {
                const auto u = in.col_idx[k];
                if (dist[u] == unseen) {
                    dist[u] = dist[x] + 1;
                    frontier.push(u);
                }
            }
        }
        score[v] = acc;
    }
    return score;
}

void jenks_layer(const JenksPrefix& prefix, std::size_t classes, std::span<const double> prev,
                 std::span<double> cur, std::span<std::size_t> split) {
    const std::size_t n = prev.size() - 1;
    for (std::size_t j = classes; j <= n; ++j) {
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
    const std::size_t rows = member.size();
    for (std::size_t t = 0; t < rows; ++t) {
        if (member[t]) {
            continue;
        }
        for (auto p : probe) {
            double dot = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                dot += unit_rows[t * dim + d] * unit_rows[p * dim + d];
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
    std::vector<double> sample(n);
    for (int r = 0; r < replicates; ++r) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        for (std::size_t i = 0; i < n; ++i) {
            sample[i] = values[rng() % n];
        }
        medians[static_cast<std::size_t>(r)] = median_inplace(sample);
    }
    return medians;
}

} // namespace serial
} // namespace incite::kernels

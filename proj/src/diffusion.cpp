#include "incite/diffusion.hpp"

#include "incite/error.hpp"
#include "incite/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace incite {

BeliefVector degroot_step(const TransitionMatrix& t, const BeliefVector& p) {
    if (t.matrix.cols() != p.values.size() || t.matrix.rows() != p.values.size()) {
        throw InvalidArgument("degroot_step: transition is " + std::to_string(t.matrix.rows()) + "x" +
                              std::to_string(t.matrix.cols()) + ", belief has " +
                              std::to_string(p.values.size()) + " entries");
    }
    BeliefVector next;
    next.values.resize(p.values.size());
    next.iteration = p.iteration + 1;
    kernels::parallel::spmv(t.matrix.view(), p.values, next.values);
    return next;
}

DabScores compute_dab(const RetweetGraph& g, const DangerCounts& counts, int iterations) {
    if (iterations < 1) {
        throw InvalidArgument("compute_dab: iterations must be positive");
    }
    const auto t = transition(adjacency(g));
    BeliefVector p;
    p.values.assign(g.node_count(), 0.0);
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (const auto it = counts.per_user.find(g.nodes()[u]); it != counts.per_user.end()) {
            p.values[u] = static_cast<double>(it->second);
        }
    }
    for (int i = 0; i < iterations; ++i) {
        p = degroot_step(t, p);
    }

    DabScores out;
    out.users = g.nodes();
    out.iterations = p.iteration;
    out.raw = std::move(p.values);
    out.normalized.assign(out.raw.size(), 0.0);
    const double top = out.raw.empty() ? 0.0 : *std::max_element(out.raw.begin(), out.raw.end());
    if (top > 0.0) {
        for (std::size_t i = 0; i < out.raw.size(); ++i) {
            out.normalized[i] = out.raw[i] / top;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Jenks natural breaks

namespace {

// Items the DP partitions: `label` is what a threshold reports, `mean` and
// `weight` enter the squared-deviation sums.
struct Items {
    std::vector<double> label;
    std::vector<double> mean;
    std::vector<double> weight;
};

std::vector<double> sorted_copy(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted) {
        if (std::isnan(v)) {
            throw InvalidArgument("jenks_breaks: NaN value");
        }
    }
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

Items distinct_items(const std::vector<double>& sorted) {
    Items d;
    for (double v : sorted) {
        if (d.label.empty() || d.label.back() != v) {
            d.label.push_back(v);
            d.mean.push_back(v);
            d.weight.push_back(1.0);
        } else {
            d.weight.back() += 1.0;
        }
    }
    return d;
}

// Consecutive blocks of `step` order statistics. The block mean carries the
// block's mass, so the DP is exact over partitions that cut between blocks.
Items block_items(const std::vector<double>& sorted, std::size_t step) {
    Items d;
    for (std::size_t begin = 0; begin < sorted.size(); begin += step) {
        const std::size_t end = std::min(begin + step, sorted.size());
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            sum += sorted[i];
        }
        d.label.push_back(sorted[end - 1]);
        d.mean.push_back(sum / static_cast<double>(end - begin));
        d.weight.push_back(static_cast<double>(end - begin));
    }
    return d;
}

void check_k(std::size_t values, int k, std::size_t distinct) {
    if (values == 0) {
        throw InvalidArgument("jenks_breaks: no values");
    }
    if (k < 2) {
        throw InvalidArgument("jenks_breaks: k must be at least 2");
    }
    if (static_cast<std::size_t>(k) > distinct) {
        throw InvalidArgument("jenks_breaks: k = " + std::to_string(k) + " exceeds " + std::to_string(distinct) +
                              " distinct values");
    }
}

std::vector<double> jenks_items(const Items& d, std::size_t classes) {
    const std::size_t n = d.label.size();

    // Centering keeps the prefix-sum variance formula well conditioned.
    double total = 0.0;
    double weight = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += d.mean[i] * d.weight[i];
        weight += d.weight[i];
    }
    const double mean = total / weight;
    kernels::JenksPrefix prefix;
    prefix.weight.assign(n + 1, 0.0);
    prefix.sum.assign(n + 1, 0.0);
    prefix.sum_sq.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = d.mean[i] - mean;
        prefix.weight[i + 1] = prefix.weight[i] + d.weight[i];
        prefix.sum[i + 1] = prefix.sum[i] + d.weight[i] * x;
        prefix.sum_sq[i + 1] = prefix.sum_sq[i] + d.weight[i] * x * x;
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(n + 1, inf);
    std::vector<double> cur(n + 1, inf);
    for (std::size_t j = 1; j <= n; ++j) {
        prev[j] = prefix.sse(0, j);
    }
    // split[c][j]: start of the last class when the first j items form c + 2 classes.
    std::vector<std::vector<std::size_t>> split(classes - 1);
    for (std::size_t c = 2; c < classes; ++c) {
        auto& s = split[c - 2];
        s.assign(n + 1, 0);
        std::fill(cur.begin(), cur.end(), inf);
        kernels::parallel::jenks_layer(prefix, c, prev, cur, s);
        std::swap(prev, cur);
    }
    // The final layer only needs the full prefix.
    {
        auto& s = split[classes - 2];
        s.assign(n + 1, 0);
        double best = inf;
        for (std::size_t i = classes - 1; i < n; ++i) {
            const double c = prev[i] + prefix.sse(i, n);
            if (c < best) {
                best = c;
                s[n] = i;
            }
        }
    }

    std::vector<double> thresholds(classes - 1);
    std::size_t end = n;
    for (std::size_t c = classes; c >= 2; --c) {
        const std::size_t begin = split[c - 2][end];
        thresholds[c - 2] = d.label[begin - 1];
        end = begin;
    }
    return thresholds;
}

} // namespace

std::vector<double> jenks_breaks_exact(std::span<const double> values, int k) {
    const auto sorted = sorted_copy(values);
    const auto items = distinct_items(sorted);
    check_k(values.size(), k, items.label.size());
    return jenks_items(items, static_cast<std::size_t>(k));
}

std::vector<double> quantile_representatives(std::span<const double> values, std::size_t count) {
    if (count == 0) {
        throw InvalidArgument("quantile_representatives: count must be positive");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const std::size_t step = (n + count - 1) / count;
    std::vector<double> reps;
    reps.reserve(count + 1);
    for (std::size_t pos = step; pos <= n; pos += step) {
        reps.push_back(sorted[pos - 1]);
    }
    if (n > 0 && (reps.empty() || n % step != 0)) {
        reps.push_back(sorted.back());
    }
    return reps;
}

std::vector<double> jenks_breaks(std::span<const double> values, int k) {
    const auto sorted = sorted_copy(values);
    auto items = distinct_items(sorted);
    check_k(values.size(), k, items.label.size());
    if (items.label.size() > kJenksThinningThreshold) {
        const std::size_t step = (sorted.size() + kJenksRepresentatives - 1) / kJenksRepresentatives;
        items = block_items(sorted, step);
        // Ties can make neighbouring blocks share a label; keep one item per label.
        Items merged;
        for (std::size_t i = 0; i < items.label.size(); ++i) {
            if (!merged.label.empty() && merged.label.back() == items.label[i]) {
                const double w = merged.weight.back() + items.weight[i];
                merged.mean.back() = (merged.mean.back() * merged.weight.back() + items.mean[i] * items.weight[i]) / w;
                merged.weight.back() = w;
            } else {
                merged.label.push_back(items.label[i]);
                merged.mean.push_back(items.mean[i]);
                merged.weight.push_back(items.weight[i]);
            }
        }
        items = std::move(merged);
        check_k(values.size(), k, items.label.size());
    }
    return jenks_items(items, static_cast<std::size_t>(k));
}

// ---------------------------------------------------------------------------
// Categories

char to_char(DangerCategory c) {
    switch (c) {
    case DangerCategory::N:
        return 'N';
    case DangerCategory::M:
        return 'M';
    case DangerCategory::V:
        break;
    }
    return 'V';
}

DangerCategory category_from_char(char c) {
    switch (c) {
    case 'N':
        return DangerCategory::N;
    case 'M':
        return DangerCategory::M;
    case 'V':
        return DangerCategory::V;
    default:
        throw InvalidArgument(std::string("unknown danger category '") + c + "'");
    }
}

DacAssignment assign_dac(std::span<const double> normalized, std::span<const double> thresholds) {
    if (thresholds.empty()) {
        throw InvalidArgument("assign_dac: no thresholds");
    }
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw InvalidArgument("assign_dac: thresholds must be ascending");
    }
    DacAssignment out;
    out.categories.reserve(normalized.size());
    std::size_t dangerous = 0;
    for (double s : normalized) {
        const auto cls = static_cast<std::size_t>(
            std::lower_bound(thresholds.begin(), thresholds.end(), s) - thresholds.begin());
        DangerCategory c = DangerCategory::M;
        if (cls == 0) {
            c = DangerCategory::N;
        } else if (cls == thresholds.size()) {
            c = DangerCategory::V;
        }
        dangerous += c == DangerCategory::N ? 0 : 1;
        out.categories.push_back(c);
    }
    out.dangerous_fraction =
        normalized.empty() ? 0.0 : static_cast<double>(dangerous) / static_cast<double>(normalized.size());
    return out;
}

DabResult classify_dab(DabScores scores, int k) {
    if (k < 2) {
        throw InvalidArgument("classify_dab: k must be at least 2");
    }
    DabResult r;
    r.scores = std::move(scores);
    const auto& values = r.scores.normalized;
    if (values.empty()) {
        return r;
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto distinct = static_cast<int>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    const double top = sorted[static_cast<std::size_t>(distinct - 1)];
    // Fewer distinct scores than classes: optimize over what exists and leave
    // the upper classes empty.
    const int usable = std::min(k, distinct);
    if (usable >= 2) {
        r.thresholds = jenks_breaks(values, usable);
    }
    r.thresholds.resize(static_cast<std::size_t>(k - 1), top);
    r.dac = assign_dac(values, r.thresholds);
    return r;
}

ScoreMap average_dab(std::span<const ScoreMap> per_event) {
    if (per_event.empty()) {
        throw InvalidArgument("average_dab: no events");
    }
    std::map<std::string, std::pair<double, int>> acc;
    for (const auto& event : per_event) {
        for (const auto& [user, score] : event) {
            auto& a = acc[user];
            a.first += score;
            a.second += 1;
        }
    }
    ScoreMap out;
    for (const auto& [user, a] : acc) {
        out.emplace(user, a.first / a.second);
    }
    return out;
}

std::vector<std::pair<double, double>> ecdf(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidArgument("ecdf: no values");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) {
            continue;
        }
        out.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
    }
    return out;
}

} // namespace incite

#include "incite/graph.hpp"

#include "incite/error.hpp"
#include "incite/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace incite {

RetweetGraph::RetweetGraph(std::vector<std::string> nodes, std::vector<std::uint64_t> original_counts,
                           std::vector<RetweetEdge> edges, std::optional<EventLabel> event)
    : nodes_(std::move(nodes)), original_(std::move(original_counts)), event_(std::move(event)) {
    if (original_.size() != nodes_.size()) {
        throw InvalidArgument("RetweetGraph: original counts not aligned with nodes");
    }
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!(nodes_[i - 1] < nodes_[i])) {
            throw InvalidArgument("RetweetGraph: node ids must be strictly increasing");
        }
    }
    const auto n = nodes_.size();
    std::map<std::pair<NodeId, NodeId>, std::uint64_t> merged;
    for (const auto& e : edges) {
        if (e.from >= n || e.to >= n) {
            throw InvalidArgument("RetweetGraph: edge endpoint out of range");
        }
        if (e.from == e.to) {
            throw InvalidArgument("RetweetGraph: self edge on " + nodes_[e.from]);
        }
        if (e.weight > 0) {
            merged[{e.from, e.to}] += e.weight;
        }
    }
    edges_.reserve(merged.size());
    std::vector<Triplet> in;
    in.reserve(merged.size());
    for (const auto& [key, w] : merged) {
        edges_.push_back({key.first, key.second, w});
        in.push_back({key.second, key.first, static_cast<double>(w)});
    }
    in_weights_ = SparseMatrix(n, n, std::move(in));
}

std::optional<NodeId> RetweetGraph::index_of(std::string_view user_id) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), user_id);
    if (it == nodes_.end() || *it != user_id) {
        return std::nullopt;
    }
    return static_cast<NodeId>(it - nodes_.begin());
}

std::uint64_t RetweetGraph::weight(NodeId from, NodeId to) const {
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{from, to},
                                     [](const RetweetEdge& e, const std::pair<NodeId, NodeId>& key) {
                                         return std::pair{e.from, e.to} < key;
                                     });
    if (it == edges_.end() || it->from != from || it->to != to) {
        return 0;
    }
    return it->weight;
}

RetweetGraph build_retweet_graph(std::span<const Tweet> tweets, std::optional<EventLabel> event) {
    std::map<std::string, std::uint64_t> originals;
    std::map<std::pair<std::string, std::string>, std::uint64_t> retweets;
    for (const auto& t : tweets) {
        auto& og = originals[t.user_id];
        if (t.is_retweet()) {
            originals.try_emplace(*t.retweet_of_user, 0);
            ++retweets[{t.user_id, *t.retweet_of_user}];
        } else {
            ++og;
        }
    }
    std::vector<std::string> nodes;
    std::vector<std::uint64_t> counts;
    nodes.reserve(originals.size());
    counts.reserve(originals.size());
    for (auto& [user, c] : originals) {
        nodes.push_back(user);
        counts.push_back(c);
    }
    auto index = [&](const std::string& id) {
        return static_cast<NodeId>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
    };
    std::vector<RetweetEdge> edges;
    edges.reserve(retweets.size());
    for (const auto& [key, w] : retweets) {
        edges.push_back({index(key.first), index(key.second), w});
    }
    return RetweetGraph(std::move(nodes), std::move(counts), std::move(edges), std::move(event));
}

SparseMatrix adjacency(const RetweetGraph& g) {
    std::vector<Triplet> entries;
    entries.reserve(g.edge_count() + g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (g.original_count(u) > 0) {
            entries.push_back({u, u, static_cast<double>(g.original_count(u))});
        }
    }
    for (const auto& e : g.edges()) {
        entries.push_back({e.from, e.to, static_cast<double>(e.weight)});
    }
    return SparseMatrix(g.node_count(), g.node_count(), std::move(entries));
}

TransitionMatrix transition(const SparseMatrix& a) {
    if (a.rows() != a.cols()) {
        throw InvalidArgument("transition: matrix is not square");
    }
    const auto view = a.view();
    for (double v : view.values) {
        if (v < 0.0 || std::isnan(v)) {
            throw InvalidArgument("transition: negative entry");
        }
    }
    const SparseMatrix at = a.transposed();
    const std::size_t n = at.rows();

    std::vector<std::size_t> ptr{0};
    std::vector<std::uint32_t> idx;
    std::vector<double> val;
    ptr.reserve(n + 1);
    idx.reserve(at.nonzeros() + n);
    val.reserve(at.nonzeros() + n);
    TransitionMatrix t;
    t.degenerate.assign(n, false);
    for (std::size_t r = 0; r < n; ++r) {
        const auto cols = at.row_columns(r);
        const auto vals = at.row_values(r);
        double sum = 0.0;
        for (double v : vals) {
            sum += v;
        }
        if (sum > 0.0) {
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (vals[k] != 0.0) {
                    idx.push_back(cols[k]);
                    val.push_back(vals[k] / sum);
                }
            }
        } else {
            // Nobody to listen to: the belief stays where it is.
            t.degenerate[r] = true;
            idx.push_back(static_cast<std::uint32_t>(r));
            val.push_back(1.0);
        }
        ptr.push_back(idx.size());
    }
    t.matrix = SparseMatrix::from_csr(n, n, std::move(ptr), std::move(idx), std::move(val));
    return t;
}

std::vector<double> indegree_centrality(const RetweetGraph& g) {
    std::vector<double> score(g.node_count(), 0.0);
    for (const auto& e : g.edges()) {
        score[e.to] += static_cast<double>(e.weight);
    }
    return score;
}

std::vector<double> harmonic_closeness(const RetweetGraph& g) {
    return kernels::parallel::harmonic_closeness(g.in_weights().view());
}

EigenvectorResult eigenvector_centrality(const RetweetGraph& g, double tol, int max_iter) {
    if (g.empty()) {
        throw InvalidArgument("eigenvector_centrality: empty graph");
    }
    const std::size_t n = g.node_count();
    EigenvectorResult r;
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    if (g.edge_count() == 0) {
        r.scores = std::move(x);
        r.degenerate = true;
        r.converged = true;
        return r;
    }
    const auto in = g.in_weights().view();
    std::vector<double> y(n);
    for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
        kernels::parallel::spmv(in, x, y);
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += x[i];
            norm += y[i] * y[i];
        }
        norm = std::sqrt(norm);
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= norm;
            const double d = y[i] - x[i];
            change += d * d;
        }
        std::swap(x, y);
        if (std::sqrt(change) < tol) {
            r.converged = true;
            break;
        }
    }
    r.iterations = std::min(r.iterations, max_iter);
    r.scores = std::move(x);
    return r;
}

CentralityReport centrality_report(const RetweetGraph& g) {
    CentralityReport report;
    report.indegree = indegree_centrality(g);
    report.harmonic = harmonic_closeness(g);
    if (!g.empty()) {
        report.eigenvector = eigenvector_centrality(g);
    }
    return report;
}

} // namespace incite

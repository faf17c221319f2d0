#pragma once

#include "incite/corpus.hpp"
#include "incite/sparse.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace incite {

using NodeId = std::uint32_t;

/// u retweeted v `weight` times.
struct RetweetEdge {
    NodeId from;
    NodeId to;
    std::uint64_t weight;

    friend bool operator==(const RetweetEdge&, const RetweetEdge&) = default;
};

/// Weighted directed retweet graph of one event (or of several merged).
/// Nodes are sorted by user id. Self-influence is carried only by the
/// original-tweet counts, never by an edge u -> u.
class RetweetGraph {
public:
    RetweetGraph() = default;

    /// Aggregates duplicate edges; throws InvalidArgument on self edges,
    /// out-of-range endpoints, unsorted or duplicate node ids.
    RetweetGraph(std::vector<std::string> nodes, std::vector<std::uint64_t> original_counts,
                 std::vector<RetweetEdge> edges, std::optional<EventLabel> event = std::nullopt);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return nodes_.empty(); }

    const std::vector<std::string>& nodes() const { return nodes_; }
    std::optional<NodeId> index_of(std::string_view user_id) const;
    const std::optional<EventLabel>& event() const { return event_; }

    std::uint64_t original_count(NodeId u) const { return original_[u]; }
    std::span<const std::uint64_t> original_counts() const { return original_; }
    /// Sorted by (from, to).
    std::span<const RetweetEdge> edges() const { return edges_; }
    std::uint64_t weight(NodeId from, NodeId to) const;

    /// W^T: row v lists every retweeter u of v with weight n_RT^{uv}.
    const SparseMatrix& in_weights() const { return in_weights_; }

    friend bool operator==(const RetweetGraph& a, const RetweetGraph& b) {
        return a.nodes_ == b.nodes_ && a.original_ == b.original_ && a.edges_ == b.edges_;
    }

private:
    std::vector<std::string> nodes_;
    std::vector<std::uint64_t> original_;
    std::vector<RetweetEdge> edges_;
    std::optional<EventLabel> event_;
    SparseMatrix in_weights_;
};

/// Edge u -> v per retweet of v by u; n_OG^u per non-retweet tweet of u.
/// Passing no event builds the merged graph over everything given.
RetweetGraph build_retweet_graph(std::span<const Tweet> tweets,
                                 std::optional<EventLabel> event = std::nullopt);

/// A(u,v) = n_RT^{uv} for u != v, A(u,u) = n_OG^u.
SparseMatrix adjacency(const RetweetGraph& g);

struct TransitionMatrix {
    SparseMatrix matrix;
    std::vector<bool> degenerate;  // row had no mass and became a self-loop
};

/// Row-normalized transpose of a nonnegative square matrix.
TransitionMatrix transition(const SparseMatrix& a);

std::vector<double> indegree_centrality(const RetweetGraph& g);
std::vector<double> harmonic_closeness(const RetweetGraph& g);

struct EigenvectorResult {
    std::vector<double> scores;
    bool converged = false;
    bool degenerate = false;  // no edges: uniform vector returned
    int iterations = 0;
};

/// Power iteration on (W^T + I): a node scores highly when it is retweeted by
/// highly scored nodes. L2-normalized.
EigenvectorResult eigenvector_centrality(const RetweetGraph& g, double tol = 1e-8,
                                         int max_iter = 1000);

struct CentralityReport {
    std::vector<double> indegree;
    std::vector<double> harmonic;
    EigenvectorResult eigenvector;
};

CentralityReport centrality_report(const RetweetGraph& g);

} // namespace incite

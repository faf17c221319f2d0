#pragma once

#include "incite/diffusion.hpp"
#include "incite/graph.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace incite {

/// GEXF 1.2, directed, one node attribute "dac" (N/M/V) and "n_og" carrying the
/// original-tweet count. `categories` is node-aligned and must cover every node.
void write_gexf(std::ostream& out, const RetweetGraph& g, std::span<const DangerCategory> categories);

struct GexfGraph {
    RetweetGraph graph;
    std::vector<DangerCategory> categories;
};

/// Reads a document produced by write_gexf.
GexfGraph read_gexf(std::istream& in);

void write_dot(std::ostream& out, const RetweetGraph& g, std::span<const DangerCategory> categories);

/// row,col,value triplets of the adjacency matrix, labelled by user id.
void write_adjacency_csv(std::ostream& out, const RetweetGraph& g);

} // namespace incite

#pragma once

#include "vaxfront/model.hpp"

#include <vector>

namespace vaxfront {

/// Directed graph on vertices 0..n-1 stored as successor lists.
/// For a transmission matrix the edge j -> i means group j infects group i.
struct Digraph {
    int n = 0;
    std::vector<std::vector<int>> successors;

    std::size_t edge_count() const;
    bool has_edge(int from, int to) const;
};

/// Edge j -> i iff a(i, j) > threshold.
Digraph support_digraph(const Matrix& a, double threshold = 0.0);

/// Strongly connected components (Tarjan). Each component is sorted and the
/// components are listed in reverse topological order of the condensation
/// (a component appears before every component that can reach it).
std::vector<IndexSet> strongly_connected_components(const Digraph& g);

/// Whether the subgraph induced on `vertices` is strongly connected.
/// The empty set is not; a single vertex is.
bool is_strongly_connected(const Digraph& g, const IndexSet& vertices);

/// Vertices reachable from `sources` along edges, sources included.
IndexSet reachable_from(const Digraph& g, const IndexSet& sources);

} // namespace vaxfront

#pragma once

#include <cstdint>
#include <vector>

#include "rturan/graph.hpp"

namespace rturan {

/// Canonical relabelling: the lexicographically smallest upper-triangle
/// adjacency string over all relabellings that sort vertices by degree
/// (non-increasing). Equal for isomorphic graphs. At most 11 vertices.
Graph canonical_graph(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

/// Connected bipartite graphs on min_vertices..max_vertices vertices, one per
/// isomorphism class, generated by vertex augmentation with canonical
/// deduplication. Ordered by (vertices, edges, canonical form).
std::vector<Graph> connected_bipartite_graphs(int max_vertices, int min_vertices = 1);

/// Loopless multigraphs on 2..max_vertices vertices with total multiplicity
/// 1..max_total, one per isomorphism class.
std::vector<Multigraph> small_multigraphs(int max_vertices, int max_total);

}  // namespace rturan

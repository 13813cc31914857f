#pragma once

#include <vector>

#include "thetavfa/graph.hpp"

namespace thetavfa {

/// Degree-one vertex whose weight is at least that of its only neighbor.
bool is_optimal_leaf(const WeightedGraph& g, const VertexSet& within, Vertex v);

/// Lowest-index isolated vertex or optimal leaf of G|_within, or -1.
Vertex find_isolated_or_optimal_leaf(const WeightedGraph& g, const VertexSet& within);

struct Preprocessed {
  /// Vertices selected by the reductions; belong to some maximum stable set.
  VertexSet forced;
  /// Connected components of what remains, each as an induced subgraph
  /// carrying the map back to the input graph.
  std::vector<Subgraph> components;
};

/// Repeatedly selects isolated vertices and optimal leaves (lowest index
/// first), removing their closed neighborhoods, then splits the remainder
/// into connected components.
Preprocessed preprocess(const WeightedGraph& g);

}  // namespace thetavfa

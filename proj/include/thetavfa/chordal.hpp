#pragma once

#include <optional>
#include <vector>

#include "thetavfa/graph.hpp"

namespace thetavfa {

/// Elimination order: peo[k] is simplicial in the subgraph induced by
/// peo[k], peo[k+1], ..., peo[n-1].
using EliminationOrder = std::vector<Vertex>;

/// Maximum cardinality search; the reverse visit order.
EliminationOrder maximum_cardinality_search(const WeightedGraph& g);

bool is_perfect_elimination_ordering(const WeightedGraph& g, const EliminationOrder& order);

struct ChordalCheck {
  bool chordal = false;
  std::optional<EliminationOrder> peo;
};

ChordalCheck is_chordal(const WeightedGraph& g);

/// Frank's two-pass sweep over a perfect elimination ordering.
/// Throws GraphError if `peo` is not a PEO of g.
StableSet exact_mwis_chordal(const WeightedGraph& g, const EliminationOrder& peo);

/// Every maximal clique of a chordal graph is a vertex plus its later
/// neighbors in the PEO, so the heaviest one is found in one pass.
VertexSet max_weight_clique_chordal(const WeightedGraph& g, const EliminationOrder& peo);

/// Stable sets of a co-chordal graph are cliques of its chordal complement.
/// Throws GraphError if the complement is not chordal.
StableSet exact_mwis_cochordal(const WeightedGraph& g);

}  // namespace thetavfa

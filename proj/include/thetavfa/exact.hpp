#pragma once

#include <stdexcept>

#include "thetavfa/generators.hpp"
#include "thetavfa/graph.hpp"

namespace thetavfa {

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BruteForceOptions {
  /// Soft limit; larger instances throw InstanceTooLarge. Cannot exceed 64.
  int max_vertices = 40;
};

/// Branch and bound over 64-bit vertex masks with a greedy weighted clique
/// cover bound. Branches include the lowest-index candidate first and only
/// strict improvements replace the incumbent, so among optimal sets the
/// lexicographically smallest one is returned.
StableSet exact_mwis_bruteforce(const WeightedGraph& g, const BruteForceOptions& options = {});

/// Weighted stability number of G|_s.
double stability_number(const WeightedGraph& g, const VertexSet& s,
                        const BruteForceOptions& options = {});

/// Vertices contained in at least one maximum weight stable set of G|_s.
VertexSet vertices_in_some_maximum_stable_set(const WeightedGraph& g, const VertexSet& s,
                                              const BruteForceOptions& options = {});

/// Exact oracle for generalized split graphs driven by their certificate.
/// Unipolar: at most one center vertex plus the best compatible vertex of
/// every cluster. Co-unipolar: a heaviest clique of the unipolar complement,
/// found per cluster as a bipartite max-weight independent set (min cut).
StableSet exact_mwis_generalized_split(const WeightedGraph& g,
                                       const GeneralizedSplitCertificate& cert);

}  // namespace thetavfa

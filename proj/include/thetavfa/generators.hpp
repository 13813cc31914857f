#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thetavfa/graph.hpp"

namespace thetavfa {

/// Chordal graph grown vertex by vertex: each new vertex attaches to a random
/// clique inside the closed neighborhood of a uniformly chosen existing
/// vertex. Every neighbor of the anchor that keeps the set a clique joins
/// with probability `density`. Vertex labels are shuffled at the end.
WeightedGraph generate_chordal(int n, double density, std::uint64_t seed);

/// Complement of generate_chordal.
WeightedGraph generate_cochordal(int n, double density, std::uint64_t seed);

struct GeneralizedSplitCertificate {
  enum class Kind { Unipolar, CoUnipolar };
  Kind kind = Kind::Unipolar;
  VertexSet center;
  std::vector<VertexSet> clusters;
};

struct GeneralizedSplitParams {
  double center_fraction_min = 0.1;
  double center_fraction_max = 0.3;
  double mean_cluster_size = 3.0;
  /// Each center-cluster pair is an edge independently with this probability.
  double cross_edge_probability = 0.3;
  double counipolar_probability = 0.5;
  /// Overrides the sampled center size when non-negative.
  int center_size = -1;
};

struct GeneralizedSplitSample {
  WeightedGraph graph;
  GeneralizedSplitCertificate certificate;
};

GeneralizedSplitSample generate_generalized_split(int n, const GeneralizedSplitParams& params,
                                                  std::uint64_t seed);

/// Returns an empty string when the certificate is valid for g, otherwise a
/// description of the first violated condition.
std::string check_generalized_split(const WeightedGraph& g, const GeneralizedSplitCertificate& cert);

WeightedGraph erdos_renyi(int n, double p, std::uint64_t seed);
WeightedGraph cycle_graph(int n);
WeightedGraph path_graph(int n);
WeightedGraph complete_graph(int n);
WeightedGraph empty_graph(int n);
WeightedGraph star_graph(int leaves);
WeightedGraph petersen_graph();

/// Integer weights drawn uniformly from [1, max_weight].
WeightedGraph with_random_weights(const WeightedGraph& g, int max_weight, std::uint64_t seed);

}  // namespace thetavfa

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace thetavfa {

using Vertex = int;

/// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<Vertex>;

using Edge = std::pair<Vertex, Vertex>;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected simple graph with strictly positive vertex weights.
///
/// Vertices are 0..n-1. Adjacency is kept both as sorted neighbor lists and
/// as a dense byte matrix so that `adjacent()` is O(1); instances handled by
/// the dense SDP solver are small enough for the n^2 bytes to be irrelevant.
/// Values are immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Unit weights.
  WeightedGraph(int n, const std::vector<Edge>& edges);

  /// Throws GraphError on self-loops, out-of-range endpoints, non-positive
  /// weights or a weight vector whose length differs from n. Repeated edges
  /// are collapsed.
  WeightedGraph(int n, const std::vector<Edge>& edges, Eigen::VectorXd weights);

  int num_vertices() const { return n_; }
  int num_edges() const { return m_; }

  bool adjacent(Vertex u, Vertex v) const { return adj_[index(u, v)] != 0; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return nbrs_[v]; }
  int degree(Vertex v) const { return static_cast<int>(nbrs_[v].size()); }

  double weight(Vertex v) const { return weights_[v]; }
  const Eigen::VectorXd& weights() const { return weights_; }

  /// Edge list with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  VertexSet all_vertices() const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  WeightedGraph with_weights(Eigen::VectorXd weights) const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<Vertex>> nbrs_;
  Eigen::VectorXd weights_;
  std::vector<std::string> labels_;
};

/// Induced subgraph together with the map from new to old vertex indices.
struct Subgraph {
  WeightedGraph graph;
  std::vector<Vertex> to_parent;  // new index -> parent index

  VertexSet lift(const VertexSet& local) const;
};

Subgraph induced_subgraph(const WeightedGraph& g, const VertexSet& s);

WeightedGraph complement(const WeightedGraph& g);

/// All vertices of g except i and its neighbors.
VertexSet closed_neighborhood_removal(const WeightedGraph& g, Vertex i);

/// I minus ({i} together with the neighbors of i).
VertexSet remove_closed_neighborhood(const WeightedGraph& g, const VertexSet& s, Vertex i);

VertexSet set_minus(const VertexSet& a, const VertexSet& b);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet erase_vertex(const VertexSet& s, Vertex v);
bool is_subset(const VertexSet& a, const VertexSet& b);
bool contains(const VertexSet& s, Vertex v);
VertexSet canonical_set(std::vector<Vertex> v);

double set_weight(const WeightedGraph& g, const VertexSet& s);
bool is_stable(const WeightedGraph& g, const VertexSet& s);
bool is_clique(const WeightedGraph& g, const VertexSet& s);

/// Connected components, each sorted, ordered by smallest member.
std::vector<VertexSet> connected_components(const WeightedGraph& g, const VertexSet& within);
std::vector<VertexSet> connected_components(const WeightedGraph& g);

struct StableSet {
  VertexSet vertices;
  double weight = 0.0;
};

/// Validates stability; throws GraphError when two members are adjacent.
StableSet make_stable_set(const WeightedGraph& g, VertexSet vertices);

/// Weighted comparisons use this absolute tolerance; cardinality instances
/// compare exactly since their weights are integral.
inline constexpr double kWeightTol = 1e-9;

}  // namespace thetavfa

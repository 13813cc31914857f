#include "thetavfa/preprocess.hpp"

namespace thetavfa {

namespace {

int degree_within(const WeightedGraph& g, const std::vector<char>& alive, Vertex v, Vertex* last) {
  int d = 0;
  for (Vertex u : g.neighbors(v)) {
    if (alive[u]) {
      ++d;
      *last = u;
    }
  }
  return d;
}

}  // namespace

bool is_optimal_leaf(const WeightedGraph& g, const VertexSet& within, Vertex v) {
  Vertex nb = -1;
  int d = 0;
  for (Vertex u : g.neighbors(v)) {
    if (contains(within, u)) {
      ++d;
      nb = u;
    }
  }
  return d == 1 && g.weight(v) >= g.weight(nb);
}

Vertex find_isolated_or_optimal_leaf(const WeightedGraph& g, const VertexSet& within) {
  std::vector<char> alive(g.num_vertices(), 0);
  for (Vertex v : within) alive[v] = 1;
  for (Vertex v : within) {
    Vertex nb = -1;
    const int d = degree_within(g, alive, v, &nb);
    if (d == 0 || (d == 1 && g.weight(v) >= g.weight(nb))) return v;
  }
  return -1;
}

Preprocessed preprocess(const WeightedGraph& g) {
  Preprocessed out;
  VertexSet remaining = g.all_vertices();
  for (Vertex v; (v = find_isolated_or_optimal_leaf(g, remaining)) >= 0;) {
    out.forced.push_back(v);
    remaining = remove_closed_neighborhood(g, remaining, v);
  }
  out.forced = canonical_set(std::move(out.forced));
  for (const auto& comp : connected_components(g, remaining)) {
    out.components.push_back(induced_subgraph(g, comp));
  }
  return out;
}

}  // namespace thetavfa

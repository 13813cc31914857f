#include "thetavfa/chordal.hpp"

#include <algorithm>
#include <cmath>

namespace thetavfa {

EliminationOrder maximum_cardinality_search(const WeightedGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> label(n, 0);
  std::vector<char> visited(n, 0);
  EliminationOrder visit;
  visit.reserve(n);
  // Bucket queue keyed by label; O(n + m).
  std::vector<std::vector<Vertex>> buckets(n + 1);
  for (Vertex v = n - 1; v >= 0; --v) buckets[0].push_back(v);
  int top = 0;
  while (static_cast<int>(visit.size()) < n) {
    while (top >= 0 && buckets[top].empty()) --top;
    Vertex v = buckets[top].back();
    buckets[top].pop_back();
    if (visited[v] || label[v] != top) continue;
    visited[v] = 1;
    visit.push_back(v);
    for (Vertex u : g.neighbors(v)) {
      if (visited[u]) continue;
      ++label[u];
      buckets[label[u]].push_back(u);
      top = std::max(top, label[u]);
    }
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

bool is_perfect_elimination_ordering(const WeightedGraph& g, const EliminationOrder& order) {
  const int n = g.num_vertices();
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<int> pos(n, -1);
  for (int k = 0; k < n; ++k) {
    if (order[k] < 0 || order[k] >= n || pos[order[k]] != -1) return false;
    pos[order[k]] = k;
  }
  for (Vertex v : order) {
    Vertex parent = -1;
    for (Vertex u : g.neighbors(v)) {
      if (pos[u] > pos[v] && (parent < 0 || pos[u] < pos[parent])) parent = u;
    }
    if (parent < 0) continue;
    for (Vertex u : g.neighbors(v)) {
      if (pos[u] > pos[v] && u != parent && !g.adjacent(u, parent)) return false;
    }
  }
  return true;
}

ChordalCheck is_chordal(const WeightedGraph& g) {
  EliminationOrder order = maximum_cardinality_search(g);
  if (!is_perfect_elimination_ordering(g, order)) return {false, std::nullopt};
  return {true, std::move(order)};
}

StableSet exact_mwis_chordal(const WeightedGraph& g, const EliminationOrder& peo) {
  if (!is_perfect_elimination_ordering(g, peo)) {
    throw GraphError("invalid perfect elimination ordering");
  }
  const int n = g.num_vertices();
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[peo[k]] = k;
  Eigen::VectorXd residual = g.weights();
  std::vector<Vertex> red;
  for (Vertex v : peo) {
    if (residual[v] <= kWeightTol) continue;
    red.push_back(v);
    const double r = residual[v];
    for (Vertex u : g.neighbors(v)) {
      if (pos[u] > pos[v]) residual[u] -= r;
    }
  }
  std::vector<char> blocked(n, 0);
  VertexSet chosen;
  for (auto it = red.rbegin(); it != red.rend(); ++it) {
    if (blocked[*it]) continue;
    chosen.push_back(*it);
    for (Vertex u : g.neighbors(*it)) blocked[u] = 1;
  }
  return make_stable_set(g, std::move(chosen));
}

VertexSet max_weight_clique_chordal(const WeightedGraph& g, const EliminationOrder& peo) {
  if (!is_perfect_elimination_ordering(g, peo)) {
    throw GraphError("invalid perfect elimination ordering");
  }
  const int n = g.num_vertices();
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[peo[k]] = k;
  VertexSet best;
  double best_w = -1.0;
  for (Vertex v : peo) {
    VertexSet c{v};
    for (Vertex u : g.neighbors(v)) {
      if (pos[u] > pos[v]) c.push_back(u);
    }
    std::sort(c.begin(), c.end());
    const double w = set_weight(g, c);
    if (w > best_w + kWeightTol || (std::abs(w - best_w) <= kWeightTol && c < best)) {
      best_w = w;
      best = std::move(c);
    }
  }
  return best;
}

StableSet exact_mwis_cochordal(const WeightedGraph& g) {
  const WeightedGraph h = complement(g);
  auto check = is_chordal(h);
  if (!check.chordal) throw GraphError("complement is not chordal");
  return make_stable_set(g, max_weight_clique_chordal(h, *check.peo));
}

}  // namespace thetavfa

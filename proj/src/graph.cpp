#include "thetavfa/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace thetavfa {

WeightedGraph::WeightedGraph(int n, const std::vector<Edge>& edges)
    : WeightedGraph(n, edges, Eigen::VectorXd::Ones(std::max(n, 0))) {}

WeightedGraph::WeightedGraph(int n, const std::vector<Edge>& edges, Eigen::VectorXd weights)
    : n_(n), weights_(std::move(weights)) {
  if (n < 0) throw GraphError("negative vertex count");
  if (weights_.size() != n) {
    throw GraphError("weight vector has length " + std::to_string(weights_.size()) +
                     " but the graph has " + std::to_string(n) + " vertices");
  }
  for (int i = 0; i < n; ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw GraphError("weight of vertex " + std::to_string(i) + " is not strictly positive");
    }
  }
  adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  nbrs_.assign(n, {});
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    if (adj_[index(u, v)]) continue;
    adj_[index(u, v)] = adj_[index(v, u)] = 1;
    nbrs_[u].push_back(v);
    nbrs_[v].push_back(u);
    ++m_;
  }
  for (auto& nb : nbrs_) std::sort(nb.begin(), nb.end());
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : nbrs_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

VertexSet WeightedGraph::all_vertices() const {
  VertexSet s(n_);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

void WeightedGraph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && static_cast<int>(labels.size()) != n_) {
    throw GraphError("label count does not match vertex count");
  }
  labels_ = std::move(labels);
}

WeightedGraph WeightedGraph::with_weights(Eigen::VectorXd weights) const {
  WeightedGraph g(n_, edges(), std::move(weights));
  g.labels_ = labels_;
  return g;
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
  return a.n_ == b.n_ && a.adj_ == b.adj_ && a.weights_ == b.weights_;
}

VertexSet Subgraph::lift(const VertexSet& local) const {
  VertexSet out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(to_parent[v]);
  std::sort(out.begin(), out.end());
  return out;
}

Subgraph induced_subgraph(const WeightedGraph& g, const VertexSet& s) {
  std::vector<int> local(g.num_vertices(), -1);
  for (std::size_t k = 0; k < s.size(); ++k) local[s[k]] = static_cast<int>(k);
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < s.size(); ++k) {
    for (Vertex v : g.neighbors(s[k])) {
      if (local[v] > static_cast<int>(k)) edges.emplace_back(static_cast<int>(k), local[v]);
    }
  }
  Eigen::VectorXd w(static_cast<Eigen::Index>(s.size()));
  for (std::size_t k = 0; k < s.size(); ++k) w[k] = g.weight(s[k]);
  Subgraph out{WeightedGraph(static_cast<int>(s.size()), edges, std::move(w)), s};
  if (g.has_labels()) {
    std::vector<std::string> labels;
    for (Vertex v : s) labels.push_back(g.labels()[v]);
    out.graph.set_labels(std::move(labels));
  }
  return out;
}

WeightedGraph complement(const WeightedGraph& g) {
  std::vector<Edge> edges;
  const int n = g.num_vertices();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!g.adjacent(u, v)) edges.emplace_back(u, v);
    }
  }
  WeightedGraph h(n, edges, g.weights());
  if (g.has_labels()) h.set_labels(g.labels());
  return h;
}

VertexSet closed_neighborhood_removal(const WeightedGraph& g, Vertex i) {
  return remove_closed_neighborhood(g, g.all_vertices(), i);
}

VertexSet remove_closed_neighborhood(const WeightedGraph& g, const VertexSet& s, Vertex i) {
  VertexSet out;
  out.reserve(s.size());
  for (Vertex v : s) {
    if (v != i && !g.adjacent(i, v)) out.push_back(v);
  }
  return out;
}

VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet erase_vertex(const VertexSet& s, Vertex v) {
  VertexSet out;
  out.reserve(s.size());
  for (Vertex u : s) {
    if (u != v) out.push_back(u);
  }
  return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

VertexSet canonical_set(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double set_weight(const WeightedGraph& g, const VertexSet& s) {
  double w = 0.0;
  for (Vertex v : s) w += g.weight(v);
  return w;
}

bool is_stable(const WeightedGraph& g, const VertexSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (s[a] == s[b] || g.adjacent(s[a], s[b])) return false;
    }
  }
  return true;
}

bool is_clique(const WeightedGraph& g, const VertexSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (!g.adjacent(s[a], s[b])) return false;
    }
  }
  return true;
}

std::vector<VertexSet> connected_components(const WeightedGraph& g, const VertexSet& within) {
  std::vector<char> inside(g.num_vertices(), 0), seen(g.num_vertices(), 0);
  for (Vertex v : within) inside[v] = 1;
  std::vector<VertexSet> comps;
  std::vector<Vertex> stack;
  for (Vertex root : within) {
    if (seen[root]) continue;
    VertexSet comp;
    stack.push_back(root);
    seen[root] = 1;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (Vertex v : g.neighbors(u)) {
        if (inside[v] && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::vector<VertexSet> connected_components(const WeightedGraph& g) {
  return connected_components(g, g.all_vertices());
}

StableSet make_stable_set(const WeightedGraph& g, VertexSet vertices) {
  vertices = canonical_set(std::move(vertices));
  if (!is_stable(g, vertices)) throw GraphError("vertex set is not stable");
  const double w = set_weight(g, vertices);
  return {std::move(vertices), w};
}

}  // namespace thetavfa

#include "thetavfa/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace thetavfa {

namespace {

WeightedGraph relabel(int n, const std::vector<Edge>& edges, std::mt19937_64& rng,
                      std::vector<Vertex>* perm_out = nullptr) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto& [u, v] : edges) out.emplace_back(perm[u], perm[v]);
  if (perm_out) *perm_out = std::move(perm);
  return WeightedGraph(n, out);
}

}  // namespace

WeightedGraph generate_chordal(int n, double density, std::uint64_t seed) {
  if (n < 1) throw GraphError("generate_chordal needs n >= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution join(std::clamp(density, 0.0, 1.0));
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<std::vector<Vertex>> nbrs(n);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    const Vertex anchor = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
    std::vector<Vertex> clique{anchor};
    std::vector<Vertex> candidates = nbrs[anchor];
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (Vertex c : candidates) {
      const bool fits = std::all_of(clique.begin(), clique.end(), [&](Vertex k) { return adj[c][k]; });
      if (fits && join(rng)) clique.push_back(c);
    }
    for (Vertex k : clique) {
      adj[v][k] = adj[k][v] = 1;
      nbrs[v].push_back(k);
      nbrs[k].push_back(v);
      edges.emplace_back(k, v);
    }
  }
  return relabel(n, edges, rng);
}

WeightedGraph generate_cochordal(int n, double density, std::uint64_t seed) {
  return complement(generate_chordal(n, density, seed));
}

GeneralizedSplitSample generate_generalized_split(int n, const GeneralizedSplitParams& params,
                                                  std::uint64_t seed) {
  if (n < 1) throw GraphError("generate_generalized_split needs n >= 1");
  std::mt19937_64 rng(seed);
  int center = params.center_size;
  if (center < 0) {
    const int lo = std::max(1, static_cast<int>(std::floor(params.center_fraction_min * n)));
    const int hi = std::max(lo, static_cast<int>(std::floor(params.center_fraction_max * n)));
    center = std::uniform_int_distribution<int>(lo, hi)(rng);
  }
  center = std::clamp(center, 0, n);

  // Vertices 0..center-1 form the center before relabelling.
  std::vector<Edge> edges;
  for (int a = 0; a < center; ++a) {
    for (int b = a + 1; b < center; ++b) edges.emplace_back(a, b);
  }
  std::vector<std::vector<Vertex>> clusters;
  std::geometric_distribution<int> extra(1.0 / std::max(1.0, params.mean_cluster_size));
  for (int next = center; next < n;) {
    const int size = std::min(n - next, 1 + extra(rng));
    std::vector<Vertex> cl(size);
    std::iota(cl.begin(), cl.end(), next);
    for (int a = 0; a < size; ++a) {
      for (int b = a + 1; b < size; ++b) edges.emplace_back(cl[a], cl[b]);
    }
    clusters.push_back(std::move(cl));
    next += size;
  }
  std::bernoulli_distribution cross(std::clamp(params.cross_edge_probability, 0.0, 1.0));
  for (const auto& cl : clusters) {
    for (Vertex v : cl) {
      for (Vertex a = 0; a < center; ++a) {
        if (cross(rng)) edges.emplace_back(a, v);
      }
    }
  }
  std::bernoulli_distribution flip(std::clamp(params.counipolar_probability, 0.0, 1.0));
  const bool co = flip(rng);

  std::vector<Vertex> perm;
  WeightedGraph g = relabel(n, edges, rng, &perm);
  GeneralizedSplitCertificate cert;
  cert.kind = co ? GeneralizedSplitCertificate::Kind::CoUnipolar
                 : GeneralizedSplitCertificate::Kind::Unipolar;
  for (int a = 0; a < center; ++a) cert.center.push_back(perm[a]);
  std::sort(cert.center.begin(), cert.center.end());
  for (const auto& cl : clusters) {
    VertexSet mapped;
    for (Vertex v : cl) mapped.push_back(perm[v]);
    cert.clusters.push_back(canonical_set(std::move(mapped)));
  }
  std::sort(cert.clusters.begin(), cert.clusters.end());
  if (co) g = complement(g);
  return {std::move(g), std::move(cert)};
}

std::string check_generalized_split(const WeightedGraph& g, const GeneralizedSplitCertificate& cert) {
  const int n = g.num_vertices();
  std::vector<int> owner(n, -2);
  auto claim = [&](const VertexSet& s, int who) -> bool {
    for (Vertex v : s) {
      if (v < 0 || v >= n || owner[v] != -2) return false;
      owner[v] = who;
    }
    return true;
  };
  if (!claim(cert.center, -1)) return "center contains an invalid or repeated vertex";
  for (std::size_t k = 0; k < cert.clusters.size(); ++k) {
    if (cert.clusters[k].empty()) return "empty cluster";
    if (!claim(cert.clusters[k], static_cast<int>(k))) return "clusters overlap or leave the graph";
  }
  if (std::count(owner.begin(), owner.end(), -2) != 0) return "center and clusters do not cover all vertices";

  const bool co = cert.kind == GeneralizedSplitCertificate::Kind::CoUnipolar;
  auto edge = [&](Vertex u, Vertex v) { return g.adjacent(u, v) != co; };
  for (std::size_t a = 0; a < cert.center.size(); ++a) {
    for (std::size_t b = a + 1; b < cert.center.size(); ++b) {
      if (!edge(cert.center[a], cert.center[b])) return "center is not a clique";
    }
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (owner[u] < 0 || owner[v] < 0) continue;
      if (owner[u] == owner[v] && !edge(u, v)) return "a cluster is not a clique";
      if (owner[u] != owner[v] && edge(u, v)) return "an edge joins two clusters";
    }
  }
  return {};
}

WeightedGraph erdos_renyi(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(std::clamp(p, 0.0, 1.0));
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return WeightedGraph(n, edges);
}

WeightedGraph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return WeightedGraph(n, n >= 3 ? edges : std::vector<Edge>{});
}

WeightedGraph path_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return WeightedGraph(n, edges);
}

WeightedGraph complete_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return WeightedGraph(n, edges);
}

WeightedGraph empty_graph(int n) { return WeightedGraph(n, {}); }

WeightedGraph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return WeightedGraph(leaves + 1, edges);
}

WeightedGraph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < 5; ++v) {
    edges.emplace_back(v, (v + 1) % 5);
    edges.emplace_back(v, v + 5);
    edges.emplace_back(5 + v, 5 + (v + 2) % 5);
  }
  return WeightedGraph(10, edges);
}

WeightedGraph with_random_weights(const WeightedGraph& g, int max_weight, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, std::max(1, max_weight));
  Eigen::VectorXd w(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) w[v] = pick(rng);
  return g.with_weights(std::move(w));
}

}  // namespace thetavfa

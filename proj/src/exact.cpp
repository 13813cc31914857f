#include "thetavfa/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <queue>

namespace thetavfa {

namespace {

using Mask = std::uint64_t;

class BranchAndBound {
 public:
  explicit BranchAndBound(const WeightedGraph& g) : g_(g), n_(g.num_vertices()), adj_(n_, 0) {
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : g.neighbors(u)) adj_[u] |= Mask{1} << v;
    }
    by_weight_.resize(n_);
    for (int v = 0; v < n_; ++v) by_weight_[v] = v;
    std::stable_sort(by_weight_.begin(), by_weight_.end(),
                     [&](int a, int b) { return g.weight(a) > g.weight(b); });
  }

  Mask solve(Mask candidates) {
    best_ = -1.0;
    best_set_ = 0;
    search(candidates, 0, 0.0);
    return best_set_;
  }

 private:
  // Greedy cover by cliques in decreasing-weight order; each clique costs its
  // heaviest (first) member.
  double clique_cover_bound(Mask p) const {
    Mask cliques[64];
    int count = 0;
    double bound = 0.0;
    for (int v : by_weight_) {
      if (!(p >> v & 1)) continue;
      int k = 0;
      while (k < count && (cliques[k] & ~adj_[v])) ++k;
      if (k == count) {
        cliques[count++] = 0;
        bound += g_.weight(v);
      }
      cliques[k] |= Mask{1} << v;
    }
    return bound;
  }

  void search(Mask p, Mask chosen, double weight) {
    if (p == 0) {
      if (weight > best_ + kWeightTol) {
        best_ = weight;
        best_set_ = chosen;
      }
      return;
    }
    if (weight + clique_cover_bound(p) <= best_ + kWeightTol) return;
    const int v = std::countr_zero(p);
    const Mask bit = Mask{1} << v;
    search(p & ~adj_[v] & ~bit, chosen | bit, weight + g_.weight(v));
    search(p & ~bit, chosen, weight);
  }

  const WeightedGraph& g_;
  int n_;
  std::vector<Mask> adj_;
  std::vector<int> by_weight_;
  double best_ = -1.0;
  Mask best_set_ = 0;
};

VertexSet mask_to_set(Mask m) {
  VertexSet s;
  while (m) {
    s.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return s;
}

Mask set_to_mask(const VertexSet& s) {
  Mask m = 0;
  for (Vertex v : s) m |= Mask{1} << v;
  return m;
}

void check_size(const WeightedGraph& g, const BruteForceOptions& options) {
  const int cap = std::min(options.max_vertices, 64);
  if (g.num_vertices() > cap) {
    throw InstanceTooLarge("brute-force oracle limited to " + std::to_string(cap) +
                           " vertices, instance has " + std::to_string(g.num_vertices()));
  }
}

// Dense max-flow (Edmonds-Karp) on a handful of nodes.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : cap_(nodes, std::vector<double>(nodes, 0.0)) {}
  void add(int u, int v, double c) { cap_[u][v] += c; }

  double run(int s, int t) {
    const int n = static_cast<int>(cap_.size());
    double flow = 0.0;
    while (true) {
      std::vector<int> parent(n, -1);
      parent[s] = s;
      std::queue<int> q;
      q.push(s);
      while (!q.empty() && parent[t] < 0) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v) {
          if (parent[v] < 0 && cap_[u][v] > 1e-12) {
            parent[v] = u;
            q.push(v);
          }
        }
      }
      if (parent[t] < 0) return flow;
      double push = std::numeric_limits<double>::infinity();
      for (int v = t; v != s; v = parent[v]) push = std::min(push, cap_[parent[v]][v]);
      for (int v = t; v != s; v = parent[v]) {
        cap_[parent[v]][v] -= push;
        cap_[v][parent[v]] += push;
      }
      flow += push;
    }
  }

  std::vector<char> reachable(int s) const {
    const int n = static_cast<int>(cap_.size());
    std::vector<char> seen(n, 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (!seen[v] && cap_[u][v] > 1e-12) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return seen;
  }

 private:
  std::vector<std::vector<double>> cap_;
};

}  // namespace

StableSet exact_mwis_bruteforce(const WeightedGraph& g, const BruteForceOptions& options) {
  check_size(g, options);
  if (g.num_vertices() == 0) return {};
  BranchAndBound bb(g);
  const Mask all = g.num_vertices() == 64 ? ~Mask{0} : (Mask{1} << g.num_vertices()) - 1;
  return make_stable_set(g, mask_to_set(bb.solve(all)));
}

double stability_number(const WeightedGraph& g, const VertexSet& s, const BruteForceOptions& options) {
  if (s.empty()) return 0.0;
  if (static_cast<int>(s.size()) == g.num_vertices()) return exact_mwis_bruteforce(g, options).weight;
  return exact_mwis_bruteforce(induced_subgraph(g, s).graph, options).weight;
}

VertexSet vertices_in_some_maximum_stable_set(const WeightedGraph& g, const VertexSet& s,
                                              const BruteForceOptions& options) {
  check_size(g, options);
  BranchAndBound bb(g);
  const Mask within = set_to_mask(s);
  auto alpha = [&](Mask m) {
    return m == 0 ? 0.0 : set_weight(g, mask_to_set(bb.solve(m)));
  };
  const double total = alpha(within);
  VertexSet out;
  for (Vertex v : s) {
    Mask rest = within & ~(Mask{1} << v);
    for (Vertex u : g.neighbors(v)) rest &= ~(Mask{1} << u);
    if (g.weight(v) + alpha(rest) >= total - 1e-7) out.push_back(v);
  }
  return out;
}

StableSet exact_mwis_generalized_split(const WeightedGraph& g,
                                       const GeneralizedSplitCertificate& cert) {
  if (const auto err = check_generalized_split(g, cert); !err.empty()) {
    throw GraphError("invalid generalized split certificate: " + err);
  }
  if (cert.kind == GeneralizedSplitCertificate::Kind::Unipolar) {
    auto pick = [&](Vertex center_vertex) {
      VertexSet s;
      if (center_vertex >= 0) s.push_back(center_vertex);
      for (const auto& cl : cert.clusters) {
        Vertex best = -1;
        for (Vertex v : cl) {
          if (center_vertex >= 0 && g.adjacent(center_vertex, v)) continue;
          if (best < 0 || g.weight(v) > g.weight(best)) best = v;
        }
        if (best >= 0) s.push_back(best);
      }
      return make_stable_set(g, std::move(s));
    };
    StableSet best = pick(-1);
    for (Vertex a : cert.center) {
      StableSet cand = pick(a);
      if (cand.weight > best.weight + kWeightTol) best = std::move(cand);
    }
    return best;
  }

  // Co-unipolar: stable sets of g are cliques of the unipolar complement.
  // Such a clique lives inside center + one cluster; the center and the
  // cluster are cliques there, so only the center-cluster pairs adjacent in g
  // conflict and the problem is a bipartite independent set.
  const VertexSet& center = cert.center;
  StableSet best = make_stable_set(g, center.empty() ? VertexSet{} : VertexSet{center.front()});
  if (cert.clusters.empty()) {
    return make_stable_set(g, center);
  }
  for (const auto& cl : cert.clusters) {
    const int a = static_cast<int>(center.size());
    const int k = static_cast<int>(cl.size());
    const int s = a + k, t = a + k + 1;
    MaxFlow flow(a + k + 2);
    const double inf = 1e18;
    for (int i = 0; i < a; ++i) flow.add(s, i, g.weight(center[i]));
    for (int j = 0; j < k; ++j) flow.add(a + j, t, g.weight(cl[j]));
    for (int i = 0; i < a; ++i) {
      for (int j = 0; j < k; ++j) {
        if (g.adjacent(center[i], cl[j])) flow.add(i, a + j, inf);
      }
    }
    flow.run(s, t);
    const auto reach = flow.reachable(s);
    VertexSet chosen;
    for (int i = 0; i < a; ++i) {
      if (reach[i]) chosen.push_back(center[i]);
    }
    for (int j = 0; j < k; ++j) {
      if (!reach[a + j]) chosen.push_back(cl[j]);
    }
    StableSet cand = make_stable_set(g, std::move(chosen));
    if (cand.weight > best.weight + kWeightTol) best = std::move(cand);
  }
  return best;
}

}  // namespace thetavfa

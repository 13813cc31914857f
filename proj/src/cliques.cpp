#include "thetavfa/cliques.hpp"

#include <algorithm>

namespace thetavfa {

namespace {

struct BronKerbosch {
  const WeightedGraph& g;
  std::size_t budget;
  std::vector<VertexSet> out;

  VertexSet neighbors_in(Vertex v, const VertexSet& s) const {
    VertexSet r;
    for (Vertex u : s) {
      if (g.adjacent(u, v)) r.push_back(u);
    }
    return r;
  }

  void expand(VertexSet& r, VertexSet p, VertexSet x) {
    if (p.empty() && x.empty()) {
      if (out.size() >= budget) {
        throw CliqueBudgetExceeded("more than " + std::to_string(budget) + " maximal cliques");
      }
      out.push_back(canonical_set(r));
      return;
    }
    // Pivot maximizing |P ∩ N(u)| over P ∪ X.
    Vertex pivot = -1;
    std::size_t best = 0;
    for (const VertexSet* s : {&p, &x}) {
      for (Vertex u : *s) {
        const std::size_t c = neighbors_in(u, p).size();
        if (pivot < 0 || c > best) {
          pivot = u;
          best = c;
        }
      }
    }
    VertexSet branch;
    for (Vertex v : p) {
      if (!g.adjacent(pivot, v)) branch.push_back(v);
    }
    for (Vertex v : branch) {
      r.push_back(v);
      expand(r, neighbors_in(v, p), neighbors_in(v, x));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.insert(std::upper_bound(x.begin(), x.end(), v), v);
    }
  }
};

}  // namespace

std::vector<VertexSet> enumerate_maximal_cliques(const WeightedGraph& g, std::size_t budget) {
  BronKerbosch bk{g, budget, {}};
  VertexSet r;
  bk.expand(r, g.all_vertices(), {});
  std::sort(bk.out.begin(), bk.out.end());
  if (g.num_vertices() == 0) bk.out.clear();
  return bk.out;
}

}  // namespace thetavfa

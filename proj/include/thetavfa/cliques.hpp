#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "thetavfa/graph.hpp"

namespace thetavfa {

class CliqueBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All maximal cliques (Bron-Kerbosch with Tomita pivoting), each sorted,
/// listed in lexicographic order. Isolated vertices come out as singletons.
std::vector<VertexSet> enumerate_maximal_cliques(const WeightedGraph& g,
                                                 std::size_t budget = 100000);

}  // namespace thetavfa

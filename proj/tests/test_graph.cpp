#include <doctest.h>

#include <fstream>
#include <set>

#include "thetavfa/chordal.hpp"
#include "thetavfa/cliques.hpp"
#include "thetavfa/dimacs.hpp"
#include "thetavfa/exact.hpp"
#include "thetavfa/generators.hpp"
#include "thetavfa/graph.hpp"
#include "thetavfa/preprocess.hpp"

using namespace thetavfa;

namespace {

// Exhaustive reference, independent of the branch and bound.
double enumerate_alpha(const WeightedGraph& g) {
  const int n = g.num_vertices();
  double best = 0.0;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    VertexSet s;
    for (int v = 0; v < n; ++v) {
      if (mask >> v & 1UL) s.push_back(v);
    }
    if (is_stable(g, s)) best = std::max(best, set_weight(g, s));
  }
  return best;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("construction validates input") {
    CHECK_THROWS_AS(WeightedGraph(3, {{0, 0}}), GraphError);
    CHECK_THROWS_AS(WeightedGraph(3, {{0, 3}}), GraphError);
    CHECK_THROWS_AS(WeightedGraph(2, {}, Eigen::Vector2d(1.0, 0.0)), GraphError);
    CHECK_THROWS_AS(WeightedGraph(2, {}, Eigen::Vector3d(1.0, 1.0, 1.0)), GraphError);
    const WeightedGraph g(3, {{1, 0}, {0, 1}, {2, 1}});
    CHECK(g.num_edges() == 2);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK_FALSE(g.adjacent(0, 2));
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  }

  TEST_CASE("set helpers") {
    const auto g = path_graph(5);
    CHECK(closed_neighborhood_removal(g, 2) == VertexSet{0, 4});
    CHECK(remove_closed_neighborhood(g, {0, 1, 3}, 0) == VertexSet{3});
    CHECK(set_minus({0, 1, 2, 5}, {1, 5}) == VertexSet{0, 2});
    CHECK(set_union({0, 3}, {1, 3}) == VertexSet{0, 1, 3});
    CHECK(canonical_set({3, 1, 3, 0}) == VertexSet{0, 1, 3});
    CHECK(is_subset({1, 3}, {0, 1, 3}));
    CHECK_FALSE(is_subset({2}, {0, 1}));
    CHECK(is_stable(g, {0, 2, 4}));
    CHECK_FALSE(is_stable(g, {0, 1}));
    CHECK(is_clique(complete_graph(4), {0, 1, 2, 3}));
    CHECK_THROWS_AS(make_stable_set(g, {1, 2}), GraphError);
  }

  TEST_CASE("induced subgraph lifts back") {
    const auto g = cycle_graph(6);
    const auto sub = induced_subgraph(g, {1, 2, 4});
    CHECK(sub.graph.num_vertices() == 3);
    CHECK(sub.graph.num_edges() == 1);
    CHECK(sub.lift({0, 2}) == VertexSet{1, 4});
  }

  TEST_CASE("components and complement") {
    const WeightedGraph g(5, {{0, 1}, {3, 4}});
    const auto comps = connected_components(g);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == VertexSet{0, 1});
    CHECK(comps[1] == VertexSet{2});
    CHECK(comps[2] == VertexSet{3, 4});
    CHECK(complement(complete_graph(4)).num_edges() == 0);
    CHECK(complement(complement(g)) == g);
  }

  TEST_CASE("named generators") {
    CHECK(cycle_graph(5).num_edges() == 5);
    CHECK(petersen_graph().num_edges() == 15);
    CHECK(star_graph(4).num_vertices() == 5);
    CHECK(complete_graph(6).num_edges() == 15);
    const auto w = with_random_weights(cycle_graph(7), 9, 3);
    CHECK(w.weights().minCoeff() >= 1.0);
    CHECK(w.weights().maxCoeff() <= 9.0);
    CHECK(w == with_random_weights(cycle_graph(7), 9, 3));
  }
}

TEST_SUITE("dimacs") {
  TEST_CASE("parse with comments and weights") {
    const auto r = parse_dimacs("c hello\np edge 3 2\ne 1 2\ne 2 3\nn 2 5\n");
    CHECK(r.graph.num_vertices() == 3);
    CHECK(r.graph.num_edges() == 2);
    CHECK(r.graph.weight(1) == 5.0);
    CHECK(r.graph.weight(0) == 1.0);
    CHECK(r.warnings.empty());
  }

  TEST_CASE("complement option") {
    const auto r = parse_dimacs("p edge 3 1\ne 1 2\n", {true, false});
    CHECK(r.graph.num_edges() == 2);
    CHECK_FALSE(r.graph.adjacent(0, 1));
  }

  TEST_CASE("edge count mismatch warns or fails") {
    const std::string text = "p edge 3 5\ne 1 2\n";
    CHECK(parse_dimacs(text).warnings.size() == 1);
    CHECK_THROWS_AS(parse_dimacs(text, {false, true}), ParseError);
  }

  TEST_CASE("malformed input reports the line") {
    try {
      parse_dimacs("p edge 3 1\ne 1 9\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_dimacs("e 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p edge 3 1\ne 1\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p edge 3 1\nx 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p edge 2 1\ne 1 1\n"), ParseError);
  }

  TEST_CASE("emit and JSON round trips") {
    const auto g = with_random_weights(generate_chordal(12, 0.5, 4), 5, 4);
    CHECK(parse_dimacs(emit_dimacs(g, "round trip")).graph == g);
    CHECK(graph_from_json(graph_to_json(g)) == g);
    CHECK_THROWS(graph_from_json("{\"n\": 2, \"edges\": [[0, 5]]}"));
  }

  TEST_CASE("fixture files match their published sizes") {
    struct Row {
      const char* name;
      int n, m, m_complement;
    };
    for (const Row& row : {Row{"johnson8-2-4.clq", 28, 210, 168}, Row{"hamming6-2.clq", 64, 1824, 192},
                           Row{"MANN_a9.clq", 45, 918, 72}}) {
      const std::string path = std::string(THETAVFA_TEST_DATA) + "/" + row.name;
      const auto g = read_graph_file(path);
      CHECK(g.num_vertices() == row.n);
      CHECK(g.num_edges() == row.m);
      CHECK(read_graph_file(path, {true, true}).num_edges() == row.m_complement);
    }
  }
}

TEST_SUITE("chordal") {
  TEST_CASE("recognition") {
    CHECK(is_chordal(path_graph(6)).chordal);
    CHECK(is_chordal(complete_graph(5)).chordal);
    CHECK_FALSE(is_chordal(cycle_graph(4)).chordal);
    CHECK_FALSE(is_chordal(cycle_graph(5)).chordal);
    const auto check = is_chordal(cycle_graph(3));
    REQUIRE(check.peo);
    CHECK(is_perfect_elimination_ordering(cycle_graph(3), *check.peo));
    CHECK_FALSE(is_perfect_elimination_ordering(path_graph(3), {1, 0, 2}));
  }

  TEST_CASE("generated graphs are chordal and co-chordal") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      CHECK(is_chordal(generate_chordal(40, 0.5, seed)).chordal);
      CHECK(is_chordal(complement(generate_cochordal(40, 0.5, seed))).chordal);
    }
  }

  TEST_CASE("structure oracles agree with enumeration") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      const auto g = with_random_weights(generate_chordal(14, 0.4, seed), 6, seed);
      const auto peo = *is_chordal(g).peo;
      const auto s = exact_mwis_chordal(g, peo);
      CHECK(is_stable(g, s.vertices));
      CHECK(s.weight == doctest::Approx(enumerate_alpha(g)));
      const auto clique = max_weight_clique_chordal(g, peo);
      CHECK(is_clique(g, clique));

      const auto co = with_random_weights(generate_cochordal(14, 0.4, seed), 6, seed);
      const auto t = exact_mwis_cochordal(co);
      CHECK(is_stable(co, t.vertices));
      CHECK(t.weight == doctest::Approx(enumerate_alpha(co)));
    }
    CHECK_THROWS_AS(exact_mwis_cochordal(complement(cycle_graph(5))), GraphError);
  }
}

TEST_SUITE("generators") {
  TEST_CASE("generalized split certificates hold") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto sample = generate_generalized_split(30, {}, seed);
      CHECK(check_generalized_split(sample.graph, sample.certificate).empty());
      CHECK(sample.graph.num_vertices() == 30);
    }
  }

  TEST_CASE("generators are deterministic in the seed") {
    CHECK(generate_chordal(30, 0.5, 9) == generate_chordal(30, 0.5, 9));
    CHECK(erdos_renyi(20, 0.5, 2) == erdos_renyi(20, 0.5, 2));
    CHECK_FALSE(erdos_renyi(20, 0.5, 2) == erdos_renyi(20, 0.5, 3));
  }
}

TEST_SUITE("exact") {
  TEST_CASE("small known values") {
    CHECK(exact_mwis_bruteforce(cycle_graph(5)).weight == 2.0);
    CHECK(exact_mwis_bruteforce(petersen_graph()).weight == 4.0);
    CHECK(exact_mwis_bruteforce(star_graph(4)).weight == 4.0);
    CHECK(exact_mwis_bruteforce(empty_graph(6)).weight == 6.0);
    CHECK(exact_mwis_bruteforce(complete_graph(6)).weight == 1.0);
    // Lexicographically smallest optimum.
    CHECK(exact_mwis_bruteforce(cycle_graph(4)).vertices == VertexSet{0, 2});
  }

  TEST_CASE("branch and bound agrees with enumeration") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto g = with_random_weights(erdos_renyi(14, 0.3, seed), 10, seed);
      const auto s = exact_mwis_bruteforce(g);
      CHECK(is_stable(g, s.vertices));
      CHECK(s.weight == doctest::Approx(enumerate_alpha(g)));
    }
  }

  TEST_CASE("size limit") {
    CHECK_THROWS_AS(exact_mwis_bruteforce(empty_graph(41)), InstanceTooLarge);
    CHECK_NOTHROW(exact_mwis_bruteforce(empty_graph(41), {64}));
  }

  TEST_CASE("restricted queries") {
    const auto g = path_graph(4);
    CHECK(stability_number(g, {1, 2}) == 1.0);
    // P4 optima: {0,2}, {0,3}, {1,3}.
    CHECK(vertices_in_some_maximum_stable_set(g, g.all_vertices()) == VertexSet{0, 1, 2, 3});
    CHECK(vertices_in_some_maximum_stable_set(path_graph(3), {0, 1, 2}) == VertexSet{0, 2});
  }

  TEST_CASE("generalized split oracle agrees with brute force") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto sample = generate_generalized_split(30, {}, seed);
      const auto g = with_random_weights(sample.graph, 5, seed);
      const auto s = exact_mwis_generalized_split(g, sample.certificate);
      CHECK(is_stable(g, s.vertices));
      CHECK(s.weight == doctest::Approx(exact_mwis_bruteforce(g).weight));
    }
  }
}

TEST_SUITE("preprocess") {
  TEST_CASE("optimal leaves") {
    const WeightedGraph g(3, {{0, 1}, {1, 2}}, Eigen::Vector3d(2.0, 3.0, 4.0));
    CHECK_FALSE(is_optimal_leaf(g, g.all_vertices(), 0));
    CHECK(is_optimal_leaf(g, g.all_vertices(), 2));
    CHECK(find_isolated_or_optimal_leaf(g, g.all_vertices()) == 2);
    CHECK(find_isolated_or_optimal_leaf(cycle_graph(5), {0, 1, 2, 3, 4}) == -1);
  }

  TEST_CASE("reductions preserve the optimum") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto g = with_random_weights(erdos_renyi(18, 0.12, seed), 4, seed);
      const auto pre = preprocess(g);
      double total = set_weight(g, pre.forced);
      for (const auto& c : pre.components) {
        CHECK(connected_components(c.graph).size() == 1);
        CHECK(find_isolated_or_optimal_leaf(c.graph, c.graph.all_vertices()) == -1);
        total += exact_mwis_bruteforce(c.graph).weight;
      }
      CHECK(is_stable(g, pre.forced));
      CHECK(total == doctest::Approx(exact_mwis_bruteforce(g).weight));
    }
  }

  TEST_CASE("star collapses completely") {
    const auto pre = preprocess(star_graph(4));
    CHECK(pre.forced == VertexSet{1, 2, 3, 4});
    CHECK(pre.components.empty());
  }
}

TEST_SUITE("cliques") {
  TEST_CASE("maximal cliques") {
    const auto c5 = enumerate_maximal_cliques(cycle_graph(5));
    CHECK(c5.size() == 5);
    const auto iso = enumerate_maximal_cliques(WeightedGraph(3, {{0, 1}}));
    CHECK(iso == std::vector<VertexSet>{{0, 1}, {2}});
    CHECK(enumerate_maximal_cliques(complete_graph(5)).size() == 1);
    // Moon-Moser graph K_{3,3,3} complement: 3^3 maximal cliques in the
    // complete tripartite graph.
    std::vector<Edge> e;
    for (int u = 0; u < 9; ++u) {
      for (int v = u + 1; v < 9; ++v) {
        if (u / 3 != v / 3) e.push_back({u, v});
      }
    }
    const auto mm = enumerate_maximal_cliques(WeightedGraph(9, e));
    CHECK(mm.size() == 27);
    for (const auto& c : mm) CHECK(is_clique(WeightedGraph(9, e), c));
    CHECK_THROWS_AS(enumerate_maximal_cliques(WeightedGraph(9, e), 5), CliqueBudgetExceeded);
  }
}

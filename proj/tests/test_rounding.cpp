#include <doctest.h>

#include "thetavfa/clique_lp.hpp"
#include "thetavfa/exact.hpp"
#include "thetavfa/generators.hpp"
#include "thetavfa/rounding.hpp"
#include "thetavfa/theta.hpp"

using namespace thetavfa;

namespace {

ThetaCertificate tight(const WeightedGraph& g) {
  ThetaOptions o;
  o.eps_sdp = 1e-8;
  return solve_theta(g, o);
}

SdpVfa pinv_vfa(const ThetaCertificate& c) { return SdpVfa::from_certificate(c, {VfaBackend::PseudoInverse}); }

}  // namespace

TEST_SUITE("rounding") {
  TEST_CASE("complete graph K5") {
    const auto g = complete_graph(5);
    const auto c = tight(g);
    auto v = pinv_vfa(c);
    CHECK(round_lookahead(g, c, v).result.weight == 1.0);
    CHECK(round_greedy(g, v).result.weight == 1.0);
  }

  TEST_CASE("P3 picks both ends") {
    const auto g = path_graph(3);
    const auto c = tight(g);
    auto v = pinv_vfa(c);
    const auto la = round_lookahead(g, c, v);
    CHECK(la.result.vertices == VertexSet{0, 2});
    const auto gr = round_greedy(g, v);
    CHECK(gr.result.vertices == VertexSet{0, 2});
    // The ends are optimal leaves, so greedy never consults the VFA argmax.
    CHECK(gr.events.front().kind == TraceEventKind::ForcedLeaf);
  }

  TEST_CASE("star takes all leaves") {
    const auto g = star_graph(4);
    const auto c = tight(g);
    auto v = pinv_vfa(c);
    CHECK(round_lookahead(g, c, v).result.vertices == VertexSet{1, 2, 3, 4});
    CHECK(round_greedy(g, v).result.vertices == VertexSet{1, 2, 3, 4});
  }

  TEST_CASE("heavy center of a star") {
    const auto g = star_graph(3).with_weights(Eigen::Vector4d(5.0, 1.0, 1.0, 1.0));
    const auto c = tight(g);
    auto v = pinv_vfa(c);
    CHECK(round_lookahead(g, c, v).result.vertices == VertexSet{0});
    CHECK(round_greedy(g, v).result.vertices == VertexSet{0});
  }

  TEST_CASE("C5 returns a maximal stable set") {
    const auto g = cycle_graph(5);
    const auto c = tight(g);
    auto v = SdpVfa::from_certificate(c);
    const auto gr = round_greedy(g, v);
    CHECK(gr.result.weight == 2.0);
    CHECK(gr.eval_count <= 125);
    auto p = pinv_vfa(c);
    const auto la = round_lookahead(g, c, p);
    CHECK(is_stable(g, la.result.vertices));
    CHECK(la.result.weight <= c.theta + 1e-6);
  }

  TEST_CASE("look-ahead is optimal on small chordal graphs") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto g = with_random_weights(generate_chordal(15, 0.5, seed), 5, seed);
      const auto c = tight(g);
      auto v = pinv_vfa(c);
      LookaheadOptions o;
      o.snapshots = true;
      const auto tr = round_lookahead(g, c, v, o);
      CHECK(tr.result.weight == doctest::Approx(exact_mwis_bruteforce(g).weight));
      auto check = pinv_vfa(c);
      CHECK(check_weight_equality_condition(g, tr, check).ok());
    }
  }

  TEST_CASE("LP VFA drives the greedy rounding too") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto g = with_random_weights(generate_cochordal(15, 0.5, seed), 5, seed);
      LpVfa v(solve_clique_lp(g));
      CHECK(round_greedy(g, v).result.weight == doctest::Approx(exact_mwis_bruteforce(g).weight));
    }
  }

  TEST_CASE("weight-equality check flags a forged snapshot") {
    const auto g = path_graph(4);
    const auto c = tight(g);
    auto v = pinv_vfa(c);
    LookaheadOptions o;
    o.snapshots = true;
    auto tr = round_lookahead(g, c, v, o);
    REQUIRE_FALSE(tr.snapshots.empty());
    auto check = pinv_vfa(c);
    CHECK(check_weight_equality_condition(g, tr, check).ok());
    Snapshot forged;
    forged.I = g.all_vertices();
    forged.i = 1;
    forged.I_prime = {};  // V(N) - V(empty) = 2 differs from w_1 = 1
    forged.committed = true;
    tr.snapshots.push_back(forged);
    const auto rep = check_weight_equality_condition(g, tr, check);
    CHECK(rep.violations == 1);
    CHECK(rep.entries.back().violated);
  }

  TEST_CASE("disabling the look-ahead still yields a stable set") {
    const auto g = generate_chordal(20, 0.5, 3);
    const auto c = tight(g);
    auto v = pinv_vfa(c);
    LookaheadOptions o;
    o.lookahead = false;
    const auto tr = round_lookahead(g, c, v, o);
    CHECK(is_stable(g, tr.result.vertices));
    for (const auto& e : tr.events) CHECK(e.kind != TraceEventKind::LookaheadReject);
  }

  TEST_CASE("two-start rule on co-unipolar graphs") {
    GeneralizedSplitParams p;
    p.counipolar_probability = 1.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto sample = generate_generalized_split(20, p, seed);
      const auto& g = sample.graph;
      const auto c = tight(g);
      auto v = pinv_vfa(c);
      const auto two = round_lookahead_counipolar(g, c, v);
      CHECK(two.best.result.weight == doctest::Approx(exact_mwis_bruteforce(g).weight));
      CHECK(two.best.result.weight >= two.first.result.weight);
    }
  }

  TEST_CASE("random selector is deterministic") {
    const auto g = generate_chordal(20, 0.5, 5);
    const auto c = tight(g);
    LookaheadOptions o;
    o.selector = random_selector(11);
    auto v1 = pinv_vfa(c);
    auto v2 = pinv_vfa(c);
    const auto a = round_lookahead(g, c, v1, o);
    o.selector = random_selector(11);
    const auto b = round_lookahead(g, c, v2, o);
    CHECK(same_events(a, b));
  }

  TEST_CASE("trace JSON round trip") {
    const auto g = generate_chordal(15, 0.5, 1);
    const auto c = tight(g);
    auto v = pinv_vfa(c);
    LookaheadOptions o;
    o.snapshots = true;
    const auto tr = round_lookahead(g, c, v, o);
    const auto back = trace_from_json(trace_to_json(tr));
    CHECK(same_events(tr, back));
    CHECK(back.result.vertices == tr.result.vertices);
    CHECK(back.snapshots.size() == tr.snapshots.size());
    CHECK(back.metadata == tr.metadata);
    auto altered = back;
    altered.events.front().value += 1e-15;
    CHECK_FALSE(same_events(tr, altered));
  }

  TEST_CASE("event kind names") {
    for (auto k : {TraceEventKind::PhaseIDiscard, TraceEventKind::Select, TraceEventKind::Discard,
                   TraceEventKind::LookaheadReject, TraceEventKind::ForcedLeaf}) {
      CHECK(parse_trace_event_kind(to_string(k)) == k);
    }
  }
}

TEST_SUITE("benson_ye") {
  TEST_CASE("complete graph gives single vertices") {
    const auto g = complete_graph(6);
    const auto c = tight(g);
    const auto by = round_benson_ye(g, c, 10, 1);
    CHECK(by.runs == 10);
    CHECK(by.sets.size() == 10);
    for (const auto& s : by.sets) CHECK(s.weight == 1.0);
    CHECK(by.average == 1.0);
  }

  TEST_CASE("ordering and determinism") {
    const auto g = erdos_renyi(20, 0.5, 4);
    const auto c = tight(g);
    const auto a = round_benson_ye(g, c, 0, 9);
    const auto b = round_benson_ye(g, c, 0, 9);
    CHECK(a.runs == 20);
    CHECK(a.average <= a.best.weight + 1e-12);
    CHECK(a.best.weight <= exact_mwis_bruteforce(g).weight);
    CHECK(a.best.vertices == b.best.vertices);
    for (const auto& s : a.sets) CHECK(is_stable(g, s.vertices));
  }
}

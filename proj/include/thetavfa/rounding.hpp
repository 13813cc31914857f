#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "thetavfa/graph.hpp"
#include "thetavfa/theta.hpp"
#include "thetavfa/vfa.hpp"

namespace thetavfa {

enum class TraceEventKind { PhaseIDiscard, Select, Discard, LookaheadReject, ForcedLeaf };

std::string to_string(TraceEventKind k);
TraceEventKind parse_trace_event_kind(const std::string& s);

struct TraceEvent {
  TraceEventKind kind = TraceEventKind::Select;
  Vertex vertex = -1;
  /// x_i for PhaseIDiscard, the VFA drop for Discard, V(I) - V(I') - w_i for
  /// LookaheadReject, 0 otherwise.
  double value = 0.0;
  /// With snapshots on: the set the vertex was removed from (I' for a
  /// discard, I for a look-ahead rejection).
  VertexSet context;
};

/// One tentative selection in the look-ahead rounding.
struct Snapshot {
  VertexSet I;
  Vertex i = -1;
  VertexSet I_prime;
  double v_I = 0.0;
  double v_I_prime = 0.0;
  bool committed = false;
};

struct RoundingTrace {
  std::string method;
  std::vector<TraceEvent> events;
  std::vector<Snapshot> snapshots;
  StableSet result;
  long eval_count = 0;
  std::map<std::string, std::string> metadata;
};

/// Picks the vertex to try next from the current candidate set.
using Selector = std::function<Vertex(const VertexSet& I)>;

Selector lowest_index_selector();
/// Uniform choice, deterministic in seed.
Selector random_selector(std::uint64_t seed);

struct LookaheadOptions {
  /// Phase I keeps i with x_i > eps_supp_rel * max x.
  double eps_supp_rel = 1e-3;
  /// Strict-gap threshold eps_gap_rel * (1 + w_i).
  double eps_gap_rel = 1e-4;
  bool lookahead = true;
  Selector selector;  // lowest index when empty
  /// Forced first tentative selection, or -1.
  Vertex first_vertex = -1;
  bool snapshots = false;
};

/// Tight-VFA rounding with one-step look-ahead.
RoundingTrace round_lookahead(const WeightedGraph& g, const ThetaCertificate& cert, Vfa& vfa,
                              const LookaheadOptions& options = {});

struct TwoStartResult {
  RoundingTrace best;
  RoundingTrace first;
  /// Present when the first run fell short of t* by more than tol_match.
  bool restarted = false;
  RoundingTrace second;
};

/// Runs the look-ahead rounding and, if the result is more than
/// tol_match = 1e-3 (1 + t*) below t*, runs it again starting from the
/// lowest-index neighbor of the first tried vertex. Returns the better run.
TwoStartResult round_lookahead_counipolar(const WeightedGraph& g, const ThetaCertificate& cert, Vfa& vfa,
                                          const LookaheadOptions& options = {});

struct GreedyOptions {
  bool snapshots = false;
  /// Candidates within this of the best value count as ties.
  double tie_tol = kWeightTol;
};

/// Greedy rounding for an arbitrary VFA: take an isolated vertex or optimal
/// leaf of G|_I when there is one, else the argmax of V(I \ N[j]) + w_j.
RoundingTrace round_greedy(const WeightedGraph& g, Vfa& vfa, const GreedyOptions& options = {});

struct BensonYeResult {
  StableSet best;
  double average = 0.0;
  int runs = 0;
  /// Per-run output, in run order.
  std::vector<StableSet> sets;
};

/// Randomized projection rounding of the primal theta solution. runs <= 0
/// means one run per vertex.
BensonYeResult round_benson_ye(const WeightedGraph& g, const ThetaCertificate& cert, int runs, std::uint64_t seed);

struct WeightEqualityEntry {
  Vertex vertex = -1;
  double residual = 0.0;
  bool violated = false;
};

struct WeightEqualityReport {
  std::vector<WeightEqualityEntry> entries;
  int violations = 0;
  bool ok() const { return violations == 0; }
};

/// |V(I) - V(I') - w_i| for every committed selection in the snapshots,
/// re-evaluated with vfa; flags residuals above eps_gap_rel * (1 + w_i).
WeightEqualityReport check_weight_equality_condition(const WeightedGraph& g, const RoundingTrace& trace, Vfa& vfa,
                                                     double eps_gap_rel = 1e-4);

std::string trace_to_json(const RoundingTrace& trace);
RoundingTrace trace_from_json(const std::string& text);

/// Events compare by kind, vertex and bit-identical value.
bool same_events(const RoundingTrace& a, const RoundingTrace& b);

}  // namespace thetavfa

#include "thetavfa/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "thetavfa/dimacs.hpp"
#include "thetavfa/linalg.hpp"
#include "thetavfa/preprocess.hpp"

namespace thetavfa {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double gap_threshold(const WeightedGraph& g, Vertex v, double rel) { return rel * (1.0 + g.weight(v)); }

}  // namespace

std::string to_string(TraceEventKind k) {
  switch (k) {
    case TraceEventKind::PhaseIDiscard:
      return "phase1-discard";
    case TraceEventKind::Select:
      return "select";
    case TraceEventKind::Discard:
      return "discard";
    case TraceEventKind::LookaheadReject:
      return "lookahead-reject";
    case TraceEventKind::ForcedLeaf:
      return "forced-leaf";
  }
  return "unknown";
}

TraceEventKind parse_trace_event_kind(const std::string& s) {
  for (auto k : {TraceEventKind::PhaseIDiscard, TraceEventKind::Select, TraceEventKind::Discard,
                 TraceEventKind::LookaheadReject, TraceEventKind::ForcedLeaf}) {
    if (to_string(k) == s) return k;
  }
  throw ParseError("unknown trace event: " + s, 0);
}

Selector lowest_index_selector() {
  return [](const VertexSet& I) { return I.front(); };
}

Selector random_selector(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](const VertexSet& I) {
    std::uniform_int_distribution<std::size_t> pick(0, I.size() - 1);
    return I[pick(*rng)];
  };
}

RoundingTrace round_lookahead(const WeightedGraph& g, const ThetaCertificate& cert, Vfa& vfa,
                              const LookaheadOptions& options) {
  const int n = g.num_vertices();
  if (cert.size() != n || vfa.size() != n) throw std::invalid_argument("round_lookahead: size mismatch");
  const long start_count = vfa.eval_count();
  const Selector select = options.selector ? options.selector : lowest_index_selector();

  RoundingTrace trace;
  trace.method = "lookahead";
  trace.metadata["eps_supp_rel"] = fmt(options.eps_supp_rel);
  trace.metadata["eps_gap_rel"] = fmt(options.eps_gap_rel);
  trace.metadata["lookahead"] = options.lookahead ? "true" : "false";
  trace.metadata["first_vertex"] = std::to_string(options.first_vertex);

  // Phase I: support of the primal solution.
  VertexSet I;
  const double eps_supp = n > 0 ? options.eps_supp_rel * cert.x.maxCoeff() : 0.0;
  for (int i = 0; i < n; ++i) {
    if (cert.x[i] > eps_supp) {
      I.push_back(i);
    } else {
      trace.events.push_back({TraceEventKind::PhaseIDiscard, i, cert.x[i], {}});
    }
  }

  VertexSet S;
  bool first = true;
  while (!I.empty()) {
    Vertex i = select(I);
    if (first && options.first_vertex >= 0 && contains(I, options.first_vertex)) i = options.first_vertex;
    first = false;

    VertexSet Ip = remove_closed_neighborhood(g, I, i);
    // Discard pass until a full sweep removes nothing.
    bool changed = true;
    while (changed && !Ip.empty()) {
      changed = false;
      double v_ip = vfa.evaluate(Ip);
      for (std::size_t k = 0; k < Ip.size();) {
        const Vertex j = Ip[k];
        const double drop = v_ip - vfa.evaluate(remove_closed_neighborhood(g, Ip, j));
        if (drop > g.weight(j) + gap_threshold(g, j, options.eps_gap_rel)) {
          TraceEvent ev{TraceEventKind::Discard, j, drop, {}};
          if (options.snapshots) ev.context = Ip;
          trace.events.push_back(std::move(ev));
          Ip.erase(Ip.begin() + static_cast<std::ptrdiff_t>(k));
          changed = true;
          v_ip = vfa.evaluate(Ip);
        } else {
          ++k;
        }
      }
    }

    const double v_i = vfa.evaluate(I);
    const double v_ip = vfa.evaluate(Ip);
    const bool reject = options.lookahead && v_i > v_ip + g.weight(i) + gap_threshold(g, i, options.eps_gap_rel);
    if (options.snapshots) trace.snapshots.push_back({I, i, Ip, v_i, v_ip, !reject});
    if (reject) {
      TraceEvent ev{TraceEventKind::LookaheadReject, i, v_i - v_ip - g.weight(i), {}};
      if (options.snapshots) ev.context = I;
      trace.events.push_back(std::move(ev));
      I = erase_vertex(I, i);
    } else {
      trace.events.push_back({TraceEventKind::Select, i, 0.0, {}});
      S = set_union(S, {i});
      I = std::move(Ip);
    }
  }
  trace.result = make_stable_set(g, S);
  trace.eval_count = vfa.eval_count() - start_count;
  return trace;
}

TwoStartResult round_lookahead_counipolar(const WeightedGraph& g, const ThetaCertificate& cert, Vfa& vfa,
                                          const LookaheadOptions& options) {
  TwoStartResult out;
  out.first = round_lookahead(g, cert, vfa, options);
  out.best = out.first;
  const double tol_match = 1e-3 * (1.0 + cert.t);
  if (out.first.result.weight >= cert.t - tol_match) return out;

  // First tentative vertex of the first run and the Phase I survivors.
  Vertex i = -1;
  VertexSet kept = g.all_vertices();
  for (const auto& ev : out.first.events) {
    if (ev.kind == TraceEventKind::PhaseIDiscard) {
      kept = erase_vertex(kept, ev.vertex);
    } else if (i < 0) {
      i = (ev.kind == TraceEventKind::Select || ev.kind == TraceEventKind::LookaheadReject) ? ev.vertex : i;
    }
  }
  if (i < 0) return out;
  Vertex j = -1;
  for (Vertex u : g.neighbors(i)) {
    if (contains(kept, u)) {
      j = u;
      break;
    }
  }
  if (j < 0) return out;

  LookaheadOptions second = options;
  second.first_vertex = j;
  out.restarted = true;
  out.second = round_lookahead(g, cert, vfa, second);
  out.second.metadata["restart_from"] = std::to_string(i);
  if (out.second.result.weight > out.first.result.weight + kWeightTol) out.best = out.second;
  out.best.eval_count = out.first.eval_count + out.second.eval_count;
  return out;
}

RoundingTrace round_greedy(const WeightedGraph& g, Vfa& vfa, const GreedyOptions& options) {
  const int n = g.num_vertices();
  if (vfa.size() != n) throw std::invalid_argument("round_greedy: size mismatch");
  const long start_count = vfa.eval_count();
  RoundingTrace trace;
  trace.method = "greedy";
  VertexSet I = g.all_vertices();
  VertexSet S;
  while (!I.empty()) {
    const Vertex leaf = find_isolated_or_optimal_leaf(g, I);
    if (leaf >= 0) {
      trace.events.push_back({TraceEventKind::ForcedLeaf, leaf, 0.0, {}});
      S = set_union(S, {leaf});
      I = remove_closed_neighborhood(g, I, leaf);
      continue;
    }
    Vertex arg = -1;
    double best = -std::numeric_limits<double>::infinity();
    VertexSet next;
    for (Vertex j : I) {
      VertexSet rest = remove_closed_neighborhood(g, I, j);
      const double val = vfa.evaluate(rest) + g.weight(j);
      if (val > best + options.tie_tol) {
        best = val;
        arg = j;
        next = std::move(rest);
      }
    }
    if (options.snapshots) trace.snapshots.push_back({I, arg, next, 0.0, best - g.weight(arg), true});
    trace.events.push_back({TraceEventKind::Select, arg, best, {}});
    S = set_union(S, {arg});
    I = std::move(next);
  }
  trace.result = make_stable_set(g, S);
  trace.eval_count = vfa.eval_count() - start_count;
  return trace;
}

BensonYeResult round_benson_ye(const WeightedGraph& g, const ThetaCertificate& cert, int runs, std::uint64_t seed) {
  const int n = g.num_vertices();
  if (cert.size() != n) throw std::invalid_argument("round_benson_ye: size mismatch");
  BensonYeResult out;
  out.runs = runs > 0 ? runs : n;
  if (n == 0) return out;

  // Columns of B with B^T B = Y; Cholesky when it succeeds, else clipped
  // eigendecomposition.
  const Eigen::MatrixXd Y = cert.bordered_primal();
  Eigen::MatrixXd B;
  Eigen::LLT<Eigen::MatrixXd> llt(Y);
  if (llt.info() == Eigen::Success) {
    B = llt.matrixU();
  } else {
    const auto dec = linalg::eigh(Y);
    const Eigen::VectorXd root = dec.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    B = root.asDiagonal() * dec.eigenvectors.transpose();
  }

  std::vector<Vertex> order(static_cast<std::size_t>(n));
  Eigen::VectorXd score(n);
  double total = 0.0;
  for (int r = 0; r < out.runs; ++r) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r + 1));
    std::normal_distribution<double> normal;
    Eigen::VectorXd u(n + 1);
    for (Eigen::Index k = 0; k <= n; ++k) u[k] = normal(rng);
    const Eigen::VectorXd proj = B.transpose() * u;
    const double orient = proj[0] < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) score[i] = orient * proj[i + 1] * cert.x[i];
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return score[a] > score[b]; });
    VertexSet S;
    for (Vertex v : order) {
      const bool free = std::none_of(S.begin(), S.end(), [&](Vertex s) { return g.adjacent(s, v); });
      if (free) S.push_back(v);
    }
    StableSet st = make_stable_set(g, canonical_set(std::move(S)));
    total += st.weight;
    if (out.sets.empty() || st.weight > out.best.weight + kWeightTol) out.best = st;
    out.sets.push_back(std::move(st));
  }
  out.average = total / out.runs;
  return out;
}

WeightEqualityReport check_weight_equality_condition(const WeightedGraph& g, const RoundingTrace& trace, Vfa& vfa,
                                                     double eps_gap_rel) {
  WeightEqualityReport r;
  for (const auto& s : trace.snapshots) {
    if (!s.committed) continue;
    const double res = std::abs(vfa.evaluate(s.I) - vfa.evaluate(s.I_prime) - g.weight(s.i));
    const bool bad = res > gap_threshold(g, s.i, eps_gap_rel);
    r.entries.push_back({s.i, res, bad});
    if (bad) ++r.violations;
  }
  return r;
}

std::string trace_to_json(const RoundingTrace& t) {
  nlohmann::json j;
  j["schema"] = "thetavfa.trace/1";
  j["method"] = t.method;
  auto events = nlohmann::json::array();
  for (const auto& e : t.events) {
    nlohmann::json ev{{"kind", to_string(e.kind)}, {"vertex", e.vertex}, {"value", hex_double(e.value)}};
    if (!e.context.empty()) ev["context"] = e.context;
    events.push_back(std::move(ev));
  }
  j["events"] = std::move(events);
  auto snaps = nlohmann::json::array();
  for (const auto& s : t.snapshots) {
    snaps.push_back({{"I", s.I},
                     {"i", s.i},
                     {"I_prime", s.I_prime},
                     {"v_I", hex_double(s.v_I)},
                     {"v_I_prime", hex_double(s.v_I_prime)},
                     {"committed", s.committed}});
  }
  j["snapshots"] = std::move(snaps);
  j["result"] = {{"vertices", t.result.vertices}, {"weight", hex_double(t.result.weight)}};
  j["eval_count"] = t.eval_count;
  j["metadata"] = t.metadata;
  return j.dump();
}

RoundingTrace trace_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RoundingTrace t;
    t.method = j.at("method").get<std::string>();
    for (const auto& e : j.at("events")) {
      TraceEvent ev;
      ev.kind = parse_trace_event_kind(e.at("kind").get<std::string>());
      ev.vertex = e.at("vertex").get<int>();
      ev.value = parse_hex_double(e.at("value").get<std::string>());
      if (e.contains("context")) ev.context = e["context"].get<VertexSet>();
      t.events.push_back(std::move(ev));
    }
    if (j.contains("snapshots")) {
      for (const auto& s : j["snapshots"]) {
        t.snapshots.push_back({s.at("I").get<VertexSet>(), s.at("i").get<int>(), s.at("I_prime").get<VertexSet>(),
                               parse_hex_double(s.at("v_I").get<std::string>()),
                               parse_hex_double(s.at("v_I_prime").get<std::string>()), s.at("committed").get<bool>()});
      }
    }
    t.result.vertices = j.at("result").at("vertices").get<VertexSet>();
    t.result.weight = parse_hex_double(j.at("result").at("weight").get<std::string>());
    t.eval_count = j.value("eval_count", 0L);
    if (j.contains("metadata")) t.metadata = j["metadata"].get<std::map<std::string, std::string>>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed trace: ") + e.what(), 0);
  }
}

bool same_events(const RoundingTrace& a, const RoundingTrace& b) {
  if (a.events.size() != b.events.size()) return false;
  for (std::size_t k = 0; k < a.events.size(); ++k) {
    const auto& x = a.events[k];
    const auto& y = b.events[k];
    if (x.kind != y.kind || x.vertex != y.vertex || hex_double(x.value) != hex_double(y.value)) return false;
  }
  return a.result.vertices == b.result.vertices;
}

}  // namespace thetavfa

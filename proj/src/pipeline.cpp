#include "thetavfa/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "thetavfa/chordal.hpp"
#include "thetavfa/exact.hpp"

namespace thetavfa {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("generator parameter without value: " + item);
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

struct Params {
  std::map<std::string, std::string> kv;
  std::string family;

  double real(const std::string& k, double def) {
    auto it = kv.find(k);
    if (it == kv.end()) return def;
    const std::string v = it->second;
    kv.erase(it);
    try {
      std::size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw ConfigError(family + ": parameter " + k + " is not a number: " + v);
    }
  }
  long long integer(const std::string& k, long long def) {
    const double d = real(k, static_cast<double>(def));
    if (d != std::floor(d)) throw ConfigError(family + ": parameter " + k + " must be an integer");
    return static_cast<long long>(d);
  }
  int size(const std::string& k = "n") {
    if (!kv.count(k)) throw ConfigError(family + ": missing parameter " + k);
    const long long n = integer(k, 0);
    if (n < 1) throw ConfigError(family + ": " + k + " must be at least 1");
    return static_cast<int>(n);
  }
  void finish() const {
    if (!kv.empty()) throw ConfigError(family + ": unknown parameter " + kv.begin()->first);
  }
};

}  // namespace

Instance generate_instance(const std::string& spec) {
  const auto colon = spec.find(':');
  Params p;
  p.family = spec.substr(0, colon);
  if (colon != std::string::npos) p.kv = parse_params(spec.substr(colon + 1));
  Instance inst;
  inst.name = spec;
  inst.family = p.family;
  const auto seed = static_cast<std::uint64_t>(p.integer("seed", 1));
  if (p.family == "chordal" || p.family == "cochordal") {
    const int n = p.size();
    const double density = p.real("density", 0.5);
    inst.graph = p.family == "chordal" ? generate_chordal(n, density, seed) : generate_cochordal(n, density, seed);
  } else if (p.family == "split") {
    const int n = p.size();
    GeneralizedSplitParams gp;
    gp.center_fraction_min = p.real("center_min", gp.center_fraction_min);
    gp.center_fraction_max = p.real("center_max", gp.center_fraction_max);
    gp.mean_cluster_size = p.real("cluster", gp.mean_cluster_size);
    gp.cross_edge_probability = p.real("p", gp.cross_edge_probability);
    gp.counipolar_probability = p.real("co", gp.counipolar_probability);
    gp.center_size = static_cast<int>(p.integer("center", gp.center_size));
    auto sample = generate_generalized_split(n, gp, seed);
    inst.graph = std::move(sample.graph);
    inst.split = std::move(sample.certificate);
  } else if (p.family == "gnp") {
    const int n = p.size();
    inst.graph = erdos_renyi(n, p.real("p", 0.5), seed);
  } else if (p.family == "cycle") {
    inst.graph = cycle_graph(p.size());
  } else if (p.family == "path") {
    inst.graph = path_graph(p.size());
  } else if (p.family == "complete") {
    inst.graph = complete_graph(p.size());
  } else if (p.family == "empty") {
    inst.graph = empty_graph(p.size());
  } else if (p.family == "star") {
    inst.graph = star_graph(p.size("leaves"));
  } else if (p.family == "petersen") {
    inst.graph = petersen_graph();
  } else {
    throw ConfigError("unknown generator family: " + p.family);
  }
  const long long wmax = p.integer("wmax", 1);
  if (wmax > 1) inst.graph = with_random_weights(inst.graph, static_cast<int>(wmax), seed);
  p.finish();
  return inst;
}

OracleResult oracle_alpha(const Instance& inst, const std::string& policy) {
  OracleResult r;
  if (policy == "none") return r;
  const auto& g = inst.graph;
  if (policy != "structure" && g.num_vertices() <= 40) {
    r.alpha = exact_mwis_bruteforce(g).weight;
    r.oracle = "bruteforce";
    return r;
  }
  if (policy == "bruteforce") return r;
  if (inst.family == "chordal") {
    const auto check = is_chordal(g);
    if (check.chordal) {
      r.alpha = exact_mwis_chordal(g, *check.peo).weight;
      r.oracle = "chordal";
    }
  } else if (inst.family == "cochordal") {
    r.alpha = exact_mwis_cochordal(g).weight;
    r.oracle = "cochordal";
  } else if (inst.family == "split" && inst.split) {
    r.alpha = exact_mwis_generalized_split(g, *inst.split).weight;
    r.oracle = "split";
  } else if (inst.family == "complete") {
    r.alpha = g.weights().maxCoeff();
    r.oracle = "structure";
  } else if (inst.family == "empty") {
    r.alpha = g.weights().sum();
    r.oracle = "structure";
  }
  return r;
}

void check_guardrail(const WeightedGraph& g, bool allow_large) {
  if (allow_large) return;
  if (g.num_vertices() > kMaxVerticesDefault || g.num_edges() > kMaxEdgesDefault) {
    throw GuardrailError("instance has " + std::to_string(g.num_vertices()) + " vertices and " +
                         std::to_string(g.num_edges()) + " edges; the dense solver is limited to " +
                         std::to_string(kMaxVerticesDefault) + " vertices and " + std::to_string(kMaxEdgesDefault) +
                         " edges unless --allow-large is given");
  }
}

SolveOutcome solve_instance(const Instance& inst, const RunConfig& config, const OracleResult& oracle) {
  config.validate();
  const auto& g = inst.graph;
  check_guardrail(g, config.allow_large);
  const bool want_lookahead = config.method == Method::Lookahead || config.method == Method::All;
  const bool want_greedy = config.method == Method::Greedy || config.method == Method::All;
  const bool want_by = config.method == Method::BensonYe || config.method == Method::All;

  SolveOutcome out;
  auto& rec = out.record;
  rec.instance = inst.name;
  rec.family = inst.family;
  rec.n = g.num_vertices();
  rec.m = g.num_edges();
  rec.alpha = oracle.alpha;
  rec.oracle = oracle.oracle;
  rec.seed = config.seed;

  if (config.preprocess) {
    out.pre = preprocess(g);
  } else if (g.num_vertices() > 0) {
    out.pre.components.push_back(induced_subgraph(g, g.all_vertices()));
  }
  rec.theta_of_input = out.pre.forced.empty() && out.pre.components.size() == 1;
  out.eps_sdp_used = want_lookahead ? std::min(config.eps_sdp, config.eps_sdp_lookahead) : config.eps_sdp;
  ThetaOptions to;
  to.eps_sdp = out.eps_sdp_used;

  const auto t_sdp = Clock::now();
  rec.theta = set_weight(g, out.pre.forced);
  for (const auto& sub : out.pre.components) {
    ComponentSolve cs{sub, solve_theta(sub.graph, to)};
    rec.theta += cs.cert.t;
    rec.max_gap = std::max(rec.max_gap, cs.cert.gap);
    rec.max_residual = std::max({rec.max_residual, cs.cert.primal_res, cs.cert.dual_res});
    rec.inexact = rec.inexact || cs.cert.inexact;
    out.components.push_back(std::move(cs));
  }
  rec.sdp_seconds = seconds_since(t_sdp);

  auto merge = [&](const std::string& key, auto&& round_component) {
    const auto t0 = Clock::now();
    VertexSet S = out.pre.forced;
    long calls = 0;
    for (const auto& cs : out.components) {
      RoundingTrace tr = round_component(cs);
      calls += tr.eval_count;
      S = set_union(S, cs.sub.lift(tr.result.vertices));
      out.traces[key].push_back(std::move(tr));
    }
    out.sets[key] = make_stable_set(g, S);
    rec.weights[key] = out.sets[key].weight;
    rec.vfa_calls[key] = calls;
    rec.rounding_seconds[key] = seconds_since(t0);
  };

  if (want_lookahead) {
    merge("lookahead", [&](const ComponentSolve& cs) {
      VfaOptions vo;
      vo.backend = config.lookahead_backend;
      vo.lambda = config.lambda;
      vo.eps_vfa = config.eps_vfa;
      SdpVfa vfa = SdpVfa::from_certificate(cs.cert, vo);
      LookaheadOptions lo;
      lo.eps_supp_rel = config.eps_supp_rel;
      lo.eps_gap_rel = config.eps_gap_rel;
      lo.lookahead = config.lookahead;
      auto res = round_lookahead_counipolar(cs.sub.graph, cs.cert, vfa, lo);
      res.best.metadata["backend"] = to_string(vo.backend);
      return res.best;
    });
  }
  if (want_greedy) {
    merge("greedy", [&](const ComponentSolve& cs) {
      VfaOptions vo;
      vo.backend = config.greedy_backend;
      vo.lambda = config.lambda;
      vo.eps_vfa = config.eps_vfa;
      SdpVfa vfa = SdpVfa::from_certificate(cs.cert, vo);
      auto tr = round_greedy(cs.sub.graph, vfa);
      tr.metadata["backend"] = to_string(vo.backend);
      tr.metadata["fallbacks"] = std::to_string(vfa.fallback_count());
      return tr;
    });
  }
  if (want_by) {
    // Runs are paired across components so that a connected, irreducible
    // input gives exactly the plain baseline.
    const auto t0 = Clock::now();
    const int runs = config.by_runs > 0 ? config.by_runs : std::max(1, g.num_vertices());
    std::vector<VertexSet> per_run(static_cast<std::size_t>(runs), out.pre.forced);
    for (const auto& cs : out.components) {
      const auto by = round_benson_ye(cs.sub.graph, cs.cert, runs, config.seed);
      for (int r = 0; r < runs; ++r) {
        auto& S = per_run[static_cast<std::size_t>(r)];
        S = set_union(S, cs.sub.lift(by.sets[static_cast<std::size_t>(r)].vertices));
      }
    }
    double total = 0.0;
    StableSet best;
    bool first = true;
    for (auto& S : per_run) {
      StableSet st = make_stable_set(g, std::move(S));
      total += st.weight;
      if (first || st.weight > best.weight + kWeightTol) best = std::move(st);
      first = false;
    }
    out.sets["by"] = best;
    rec.weights["by"] = best.weight;
    rec.by_best = best.weight;
    rec.by_avg = total / runs;
    rec.vfa_calls["by"] = 0;
    rec.rounding_seconds["by"] = seconds_since(t0);
  }
  return out;
}

std::string record_to_json(const ExperimentRecord& r) {
  nlohmann::json j;
  j["schema"] = "thetavfa.record/1";
  j["instance"] = r.instance;
  j["family"] = r.family;
  j["n"] = r.n;
  j["m"] = r.m;
  j["theta"] = r.theta;
  j["theta_of_input"] = r.theta_of_input;
  j["alpha"] = r.alpha ? nlohmann::json(*r.alpha) : nlohmann::json(nullptr);
  j["oracle"] = r.oracle;
  j["weights"] = r.weights;
  j["by_avg"] = r.by_avg ? nlohmann::json(*r.by_avg) : nlohmann::json(nullptr);
  j["by_best"] = r.by_best ? nlohmann::json(*r.by_best) : nlohmann::json(nullptr);
  j["vfa_calls"] = r.vfa_calls;
  j["sdp_seconds"] = r.sdp_seconds;
  j["rounding_seconds"] = r.rounding_seconds;
  j["max_gap"] = r.max_gap;
  j["max_residual"] = r.max_residual;
  j["inexact"] = r.inexact;
  j["seed"] = r.seed;
  return j.dump();
}

}  // namespace thetavfa

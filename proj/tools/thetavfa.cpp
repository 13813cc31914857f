// Command-line front end: solve, bench, generate, verify, replay.
//
// Exit codes: 0 success, 2 parse or usage error, 3 solver failure,
// 4 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "thetavfa/bench.hpp"
#include "thetavfa/clique_lp.hpp"
#include "thetavfa/config.hpp"
#include "thetavfa/dimacs.hpp"
#include "thetavfa/exact.hpp"
#include "thetavfa/pipeline.hpp"
#include "thetavfa/rounding.hpp"
#include "thetavfa/theta.hpp"
#include "thetavfa/vfa.hpp"

namespace {

using namespace thetavfa;

constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerify = 4;

struct ExitCode {
  int code;
  std::string message;
};

struct InputOptions {
  std::string dimacs;
  std::string graph;
  std::string generate;
  bool complement = false;
  bool strict_edge_count = false;

  void add(CLI::App* app) {
    auto* d = app->add_option("--dimacs", dimacs, "DIMACS ASCII graph file");
    auto* g = app->add_option("--graph", graph, "JSON or DIMACS graph file (detected from content)");
    auto* s = app->add_option("--generate", generate, "generator spec, e.g. chordal:n=50,seed=7");
    d->excludes(g)->excludes(s);
    g->excludes(s);
    app->add_flag("--complement", complement, "complement the edge set after reading");
    app->add_flag("--strict-edge-count", strict_edge_count, "treat a DIMACS edge-count mismatch as an error");
  }

  Instance load() const {
    Instance inst;
    DimacsOptions opts;
    opts.complement = complement;
    opts.strict_edge_count = strict_edge_count;
    if (!generate.empty()) {
      inst = generate_instance(generate);
      if (complement) {
        inst.graph = thetavfa::complement(inst.graph);
        inst.family = "file";
        inst.split.reset();
        inst.name += " (complement)";
      }
      return inst;
    }
    if (!dimacs.empty()) {
      auto res = read_dimacs_file(dimacs, opts);
      for (const auto& w : res.warnings) std::cerr << "warning: " << dimacs << ": " << w << "\n";
      inst.graph = std::move(res.graph);
      inst.name = dimacs;
    } else if (!graph.empty()) {
      inst.graph = read_graph_file(graph, opts);
      inst.name = graph;
    } else {
      throw ExitCode{kExitParse, "one of --dimacs, --graph or --generate is required"};
    }
    inst.family = "file";
    return inst;
  }
};

void add_config_options(CLI::App* app, RunConfig& c) {
  app->add_option("--eps-sdp", c.eps_sdp, "SDP tolerance for reported results");
  app->add_option("--eps-sdp-lookahead", c.eps_sdp_lookahead, "SDP tolerance when the look-ahead rounding runs");
  app->add_option("--eps-vfa", c.eps_vfa, "CG residual tolerance");
  app->add_option("--lambda", c.lambda, "ridge term of the CG backend");
  app->add_option("--eps-supp", c.eps_supp_rel, "Phase I support threshold relative to max x");
  app->add_option("--eps-gap", c.eps_gap_rel, "strict-gap threshold factor");
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--oracle", c.oracle, "auto | bruteforce | structure | none");
  app->add_option("--threads", c.threads, "worker threads");
  app->add_option("--by-runs", c.by_runs, "Benson-Ye repetitions (0: one per vertex)");
  app->add_flag("--allow-large", c.allow_large, "lift the size guardrail");
  app->add_option_function<std::string>(
      "--method", [&c](const std::string& s) { c.method = parse_method(s); }, "lookahead | greedy | by | all");
  app->add_option_function<std::string>(
      "--greedy-backend", [&c](const std::string& s) { c.greedy_backend = parse_vfa_backend(s); }, "cg | pinv | tikhonov");
  app->add_option_function<std::string>(
      "--lookahead-backend", [&c](const std::string& s) { c.lookahead_backend = parse_vfa_backend(s); },
      "cg | pinv | tikhonov");
  app->add_flag_function(
      "--no-lookahead", [&c](std::int64_t) { c.lookahead = false; }, "skip the look-ahead rejection test");
  app->add_flag_function(
      "--no-preprocess", [&c](std::int64_t) { c.preprocess = false; }, "solve the whole input in one piece");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ExitCode{kExitParse, "cannot write " + path};
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ExitCode{kExitParse, "cannot read " + path};
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string join(const VertexSet& s) {
  std::string out;
  for (Vertex v : s) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

int run_solve(const InputOptions& in, const RunConfig& config, const std::string& cert_out,
              const std::string& trace_out, const std::string& record_out) {
  const Instance inst = in.load();
  check_guardrail(inst.graph, config.allow_large);
  const OracleResult oracle = oracle_alpha(inst, config.oracle);
  const SolveOutcome out = solve_instance(inst, config, oracle);
  const auto& rec = out.record;

  std::printf("instance %s\n", rec.instance.c_str());
  std::printf("n %d m %d\n", rec.n, rec.m);
  std::printf("theta %.6f%s\n", rec.theta, rec.theta_of_input ? "" : " (after preprocessing)");
  if (rec.alpha) std::printf("alpha %.6f (%s)\n", *rec.alpha, rec.oracle.c_str());
  for (const auto& [method, set] : out.sets) {
    std::printf("weight[%s] %.6f gap_to_theta %.6f\n", method.c_str(), set.weight, rec.theta - set.weight);
    std::printf("set[%s] %s\n", method.c_str(), join(set.vertices).c_str());
  }
  if (rec.by_avg) std::printf("by_avg %.6f\n", *rec.by_avg);
  std::printf("record %s\n", record_to_json(rec).c_str());
  if (!record_out.empty()) write_file(record_out, record_to_json(rec) + "\n");

  const bool whole = out.components.size() == 1 && out.pre.forced.empty();
  if (!cert_out.empty() || !trace_out.empty()) {
    if (!whole) {
      throw ExitCode{kExitParse,
                     "certificate and trace output describe the whole graph; the input was split by "
                     "preprocessing, rerun with --no-preprocess"};
    }
    if (!cert_out.empty()) write_file(cert_out, certificate_to_json(out.components.front().cert));
    if (!trace_out.empty()) {
      std::string method = config.method == Method::Lookahead ? "lookahead" : "greedy";
      if (!out.traces.count(method)) throw ExitCode{kExitParse, "no rounding trace for method " + method};
      auto trace = out.traces.at(method).front();
      trace.metadata["lambda"] = hex_double(config.lambda);
      trace.metadata["eps_vfa"] = hex_double(config.eps_vfa);
      write_file(trace_out, trace_to_json(trace));
    }
  }
  if (rec.inexact && rec.max_gap > out.eps_sdp_used) {
    std::fprintf(stderr, "error: SDP solve did not reach the requested tolerance (gap %.3e)\n", rec.max_gap);
    return kExitSolver;
  }
  return 0;
}

int run_bench_cmd(const RunConfig& config, const std::string& families, const std::string& sizes, int count,
                  const std::string& csv_out, const std::string& jsonl_out, bool progress) {
  BenchSpec spec;
  spec.count = count;
  std::stringstream fs(families);
  for (std::string f; std::getline(fs, f, ',');) {
    if (!f.empty()) spec.families.push_back(f);
  }
  std::stringstream ss(sizes);
  for (std::string s; std::getline(ss, s, ',');) {
    if (s.empty()) continue;
    try {
      spec.sizes.push_back(std::stoi(s));
    } catch (const std::exception&) {
      throw ExitCode{kExitParse, "bad size: " + s};
    }
  }
  auto report = [](const ExperimentRecord& r) {
    std::fprintf(stderr, "%s theta=%.4f", r.instance.c_str(), r.theta);
    for (const auto& [m, w] : r.weights) std::fprintf(stderr, " %s=%g", m.c_str(), w);
    if (r.alpha) std::fprintf(stderr, " alpha=%g", *r.alpha);
    std::fprintf(stderr, "\n");
  };
  const BenchResult result = run_bench(spec, config, progress ? std::function<void(const ExperimentRecord&)>(report)
                                                              : std::function<void(const ExperimentRecord&)>());
  const std::string csv = bench_csv(result);
  std::fputs(csv.c_str(), stdout);
  if (!csv_out.empty()) write_file(csv_out, csv);
  const std::string jsonl_path = !jsonl_out.empty() ? jsonl_out : config.output;
  if (!jsonl_path.empty()) write_file(jsonl_path, bench_jsonl(result));
  for (const auto& r : result.records) {
    if (r.inexact && r.max_gap > config.eps_sdp) return kExitSolver;
  }
  return 0;
}

int run_generate(const std::string& spec, const std::string& format, const std::string& out_path,
                 const std::string& split_out) {
  const Instance inst = generate_instance(spec);
  std::string text;
  if (format == "dimacs") {
    text = emit_dimacs(inst.graph, "generated by thetavfa: " + spec);
  } else if (format == "json") {
    text = graph_to_json(inst.graph) + "\n";
  } else {
    throw ExitCode{kExitParse, "unknown format: " + format};
  }
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_file(out_path, text);
  }
  if (!split_out.empty()) {
    if (!inst.split) throw ExitCode{kExitParse, "only split instances carry a structure certificate"};
    std::ostringstream s;
    s << "{\"kind\": \"" << (inst.split->kind == GeneralizedSplitCertificate::Kind::Unipolar ? "unipolar" : "co-unipolar")
      << "\", \"center\": [" << join(inst.split->center) << "], \"clusters\": " << inst.split->clusters.size() << "}\n";
    write_file(split_out, s.str());
  }
  return 0;
}

// Axiom checks that hold by construction for any dual-feasible certificate
// (Tikhonov backend, exact zero pattern).
struct AxiomResult {
  std::string name;
  double worst = 0.0;
  bool passed = true;
};

std::vector<AxiomResult> vfa_axioms(const WeightedGraph& g, const ThetaCertificate& cert, std::uint64_t seed) {
  VfaOptions vo;
  vo.backend = VfaBackend::Tikhonov;
  SdpVfa V = SdpVfa::from_certificate(cert, vo);
  const int n = g.num_vertices();
  std::vector<AxiomResult> out;
  out.push_back({"vfa.empty_zero", std::abs(V({})), V({}) == 0.0});

  AxiomResult single{"vfa.singleton_bound", 0.0, true};
  for (int i = 0; i < n; ++i) {
    const double short_by = g.weight(i) - V({i});
    single.worst = std::max(single.worst, short_by);
    if (short_by > 1e-6) single.passed = false;
  }
  out.push_back(single);

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  AxiomResult mono{"vfa.monotone", 0.0, true};
  AxiomResult add{"vfa.no_edge_additivity", 0.0, true};
  for (int k = 0; k < 200 && n > 0; ++k) {
    VertexSet J, I;
    for (int v = 0; v < n; ++v) {
      if (coin(rng)) {
        J.push_back(v);
        if (coin(rng)) I.push_back(v);
      }
    }
    const double excess = V(I) - V(J);
    mono.worst = std::max(mono.worst, excess);
    if (excess > 1e-6) mono.passed = false;

    // Split a random set into two parts with no edge between them: take a
    // component of G|_J against the rest.
    const auto comps = connected_components(g, J);
    if (comps.size() >= 2) {
      const VertexSet& A = comps.front();
      const VertexSet B = set_minus(J, A);
      const double err = std::abs(V(J) - V(A) - V(B));
      add.worst = std::max(add.worst, err);
      if (err > 1e-6) add.passed = false;
    }
  }
  out.push_back(mono);
  out.push_back(add);
  return out;
}

int run_verify(const InputOptions& in, const std::string& cert_path, double tol, std::uint64_t seed) {
  const Instance inst = in.load();
  const ThetaCertificate cert = certificate_from_json(read_file(cert_path));
  const CertificateReport report = verify_certificate(inst.graph, cert, tol);
  std::fputs(report.summary().c_str(), stdout);
  if (!report.ok()) {
    for (const auto& c : report.checks) {
      if (!c.passed) std::fprintf(stderr, "verification failed: %s\n", c.name.c_str());
    }
    return kExitVerify;
  }
  bool ok = true;
  for (const auto& a : vfa_axioms(inst.graph, cert, seed)) {
    std::printf("%s %s = %.3e\n", a.passed ? "  ok  " : "  FAIL", a.name.c_str(), a.worst);
    if (!a.passed) {
      std::fprintf(stderr, "verification failed: %s\n", a.name.c_str());
      ok = false;
    }
  }
  return ok ? 0 : kExitVerify;
}

int run_replay(const InputOptions& in, const std::string& cert_path, const std::string& trace_path) {
  const Instance inst = in.load();
  const ThetaCertificate cert = certificate_from_json(read_file(cert_path));
  const RoundingTrace recorded = trace_from_json(read_file(trace_path));
  if (cert.size() != inst.graph.num_vertices()) {
    throw ExitCode{kExitVerify, "certificate dimension does not match the graph"};
  }
  auto meta = [&](const std::string& key, const std::string& def) {
    auto it = recorded.metadata.find(key);
    return it == recorded.metadata.end() ? def : it->second;
  };
  VfaOptions vo;
  vo.backend = parse_vfa_backend(meta("backend", recorded.method == "lookahead" ? "tikhonov" : "cg"));
  vo.lambda = parse_hex_double(meta("lambda", hex_double(vo.lambda)));
  vo.eps_vfa = parse_hex_double(meta("eps_vfa", hex_double(vo.eps_vfa)));
  SdpVfa vfa = SdpVfa::from_certificate(cert, vo);

  RoundingTrace again;
  if (recorded.method == "lookahead") {
    LookaheadOptions lo;
    lo.eps_supp_rel = std::stod(meta("eps_supp_rel", "1e-3"));
    lo.eps_gap_rel = std::stod(meta("eps_gap_rel", "1e-4"));
    lo.lookahead = meta("lookahead", "true") == "true";
    lo.first_vertex = std::stoi(meta("first_vertex", "-1"));
    again = round_lookahead(inst.graph, cert, vfa, lo);
  } else if (recorded.method == "greedy") {
    again = round_greedy(inst.graph, vfa);
  } else {
    throw ExitCode{kExitParse, "cannot replay method " + recorded.method};
  }
  if (!same_events(recorded, again)) {
    std::fprintf(stderr, "replay diverged from the recorded trace\n");
    return kExitVerify;
  }
  std::printf("replay matches: %zu events, weight %.6f\n", again.events.size(), again.result.weight);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum weight stable sets from the Lovasz theta SDP"};
  app.require_subcommand(1);

  RunConfig config;
  try {
    apply_env_overrides(config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  }

  InputOptions input;
  std::string cert_out, trace_out, record_out;
  auto* solve = app.add_subcommand("solve", "solve one instance");
  input.add(solve);
  add_config_options(solve, config);
  solve->add_option("--cert-out", cert_out, "write the theta certificate (JSON)");
  solve->add_option("--trace-out", trace_out, "write the rounding trace (JSON)");
  solve->add_option("--record-out", record_out, "write the experiment record (JSON line)");

  std::string families = "chordal,cochordal,split", sizes = "20,50", csv_out, jsonl_out;
  int count = 20;
  bool progress = false;
  auto* bench = app.add_subcommand("bench", "optimality table over generated families");
  add_config_options(bench, config);
  bench->add_option("--families", families, "comma-separated: chordal, cochordal, split, gnp");
  bench->add_option("--sizes", sizes, "comma-separated vertex counts");
  bench->add_option("--count", count, "instances per (family, size)");
  bench->add_option("--csv", csv_out, "write the table as CSV");
  bench->add_option("--jsonl", jsonl_out, "write one JSON record per instance");
  bench->add_flag("--progress", progress, "print each record to stderr");

  std::string gen_spec, gen_format = "dimacs", gen_out, split_out;
  auto* gen = app.add_subcommand("generate", "write a generated graph");
  gen->add_option("spec", gen_spec, "generator spec")->required();
  gen->add_option("--format", gen_format, "dimacs | json");
  gen->add_option("-o,--output", gen_out, "output path (stdout when omitted)");
  gen->add_option("--structure-out", split_out, "write the generalized split certificate");

  std::string cert_path, trace_path;
  double tol = 1e-5;
  std::uint64_t verify_seed = 1;
  InputOptions verify_input;
  auto* verify = app.add_subcommand("verify", "re-check a certificate against a graph");
  verify_input.add(verify);
  verify->add_option("--cert", cert_path, "certificate JSON")->required();
  verify->add_option("--tol", tol, "tolerance for every check");
  verify->add_option("--seed", verify_seed, "seed for the random VFA axiom samples");

  InputOptions replay_input;
  std::string replay_cert, replay_trace;
  auto* replay = app.add_subcommand("replay", "re-run a rounding from a certificate and compare traces");
  replay_input.add(replay);
  replay->add_option("--cert", replay_cert, "certificate JSON")->required();
  replay->add_option("--trace", replay_trace, "trace JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  }

  try {
    config.validate();
    if (*solve) return run_solve(input, config, cert_out, trace_out, record_out);
    if (*bench) return run_bench_cmd(config, families, sizes, count, csv_out, jsonl_out, progress);
    if (*gen) return run_generate(gen_spec, gen_format, gen_out, split_out);
    if (*verify) return run_verify(verify_input, cert_path, tol, verify_seed);
    if (*replay) return run_replay(replay_input, replay_cert, replay_trace);
  } catch (const ExitCode& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.code;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (const GuardrailError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const GraphError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kExitSolver;
  }
  return 0;
}

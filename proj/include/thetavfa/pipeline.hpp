#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetavfa/config.hpp"
#include "thetavfa/generators.hpp"
#include "thetavfa/graph.hpp"
#include "thetavfa/preprocess.hpp"
#include "thetavfa/rounding.hpp"
#include "thetavfa/theta.hpp"

namespace thetavfa {

/// Input refused by the size guardrail.
class GuardrailError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  std::string name;
  /// chordal | cochordal | split | gnp | cycle | path | complete | empty |
  /// star | petersen | file
  std::string family;
  WeightedGraph graph;
  std::optional<GeneralizedSplitCertificate> split;
};

/// Builds an instance from "family:key=value,...", e.g.
/// "chordal:n=50,seed=7", "split:n=30,seed=2,p=0.3", "gnp:n=20,p=0.5,seed=1",
/// "cycle:n=5", "petersen". Any family accepts wmax=K for random integer
/// weights in [1, K]. Throws ConfigError on an unknown family or key.
Instance generate_instance(const std::string& spec);

struct OracleResult {
  std::optional<double> alpha;
  /// bruteforce | chordal | cochordal | split | none
  std::string oracle = "none";
};

/// policy "auto": brute force up to 40 vertices, else the structure oracle
/// of the generating family. "structure" skips brute force; "bruteforce"
/// never uses structure; "none" returns nothing.
OracleResult oracle_alpha(const Instance& inst, const std::string& policy = "auto");

/// Throws GuardrailError for n > 500 or m > 50000 unless allowed.
void check_guardrail(const WeightedGraph& g, bool allow_large);

struct ExperimentRecord {
  std::string instance;
  std::string family;
  int n = 0;
  int m = 0;
  /// Sum of component theta values plus the weight of forced vertices; equal
  /// to theta of the input when preprocessing changed nothing.
  double theta = 0.0;
  bool theta_of_input = true;
  std::optional<double> alpha;
  std::string oracle = "none";
  std::map<std::string, double> weights;
  std::optional<double> by_avg;
  std::optional<double> by_best;
  std::map<std::string, long> vfa_calls;
  double sdp_seconds = 0.0;
  std::map<std::string, double> rounding_seconds;
  double max_gap = 0.0;
  double max_residual = 0.0;
  bool inexact = false;
  std::uint64_t seed = 0;
};

std::string record_to_json(const ExperimentRecord& r);

struct ComponentSolve {
  Subgraph sub;
  ThetaCertificate cert;
};

struct SolveOutcome {
  Preprocessed pre;
  std::vector<ComponentSolve> components;
  double eps_sdp_used = 0.0;
  /// Keys: lookahead, greedy, by (best run).
  std::map<std::string, StableSet> sets;
  /// Per method, one trace per component (component order).
  std::map<std::string, std::vector<RoundingTrace>> traces;
  ExperimentRecord record;
};

/// Preprocess, solve theta per component, round with the configured
/// method(s) and merge the forced vertices back in.
SolveOutcome solve_instance(const Instance& inst, const RunConfig& config, const OracleResult& oracle = {});

}  // namespace thetavfa

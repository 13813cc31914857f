#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "thetavfa/vfa.hpp"

namespace thetavfa {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Method { Lookahead, Greedy, BensonYe, All };

std::string to_string(Method m);
Method parse_method(const std::string& s);

struct RunConfig {
  /// Solver tolerance for reported results and the greedy rounding.
  double eps_sdp = 1e-5;
  /// Tighter tolerance used whenever the look-ahead rounding runs.
  double eps_sdp_lookahead = 1e-8;
  double eps_vfa = 1e-6;
  double lambda = 1e-4;
  /// Phase I keeps x_i > eps_supp_rel * max x.
  double eps_supp_rel = 1e-3;
  /// Strict gaps are compared against eps_gap_rel * (1 + w_i).
  double eps_gap_rel = 1e-4;
  std::uint64_t seed = 1;
  Method method = Method::Greedy;
  VfaBackend greedy_backend = VfaBackend::RegularizedCG;
  VfaBackend lookahead_backend = VfaBackend::Tikhonov;
  bool lookahead = true;
  /// Isolated vertices, optimal leaves and component splitting before the
  /// solve. Off means one solve on the whole input.
  bool preprocess = true;
  /// auto | bruteforce | structure | none
  std::string oracle = "auto";
  int threads = 1;
  /// Benson-Ye repetitions; 0 means one per vertex.
  int by_runs = 0;
  bool allow_large = false;
  std::string output;

  /// Throws ConfigError when a tolerance is not positive or a choice is unknown.
  void validate() const;
};

/// Guardrail for the dense interior-point method.
inline constexpr int kMaxVerticesDefault = 500;
inline constexpr long kMaxEdgesDefault = 50000;

/// Overrides fields from THETAVFA_* variables (EPS_SDP, EPS_SDP_LOOKAHEAD,
/// EPS_VFA, LAMBDA, EPS_SUPP, EPS_GAP, SEED, METHOD, GREEDY_BACKEND,
/// LOOKAHEAD_BACKEND, LOOKAHEAD, PREPROCESS, ORACLE, THREADS, BY_RUNS, ALLOW_LARGE,
/// OUTPUT). Malformed values throw ConfigError naming the variable.
void apply_env_overrides(RunConfig& config,
                         const std::function<const char*(const char*)>& lookup = nullptr);

}  // namespace thetavfa

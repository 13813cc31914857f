#include "thetavfa/config.hpp"

#include <cstdlib>

namespace thetavfa {

std::string to_string(Method m) {
  switch (m) {
    case Method::Lookahead:
      return "lookahead";
    case Method::Greedy:
      return "greedy";
    case Method::BensonYe:
      return "by";
    case Method::All:
      return "all";
  }
  return "unknown";
}

Method parse_method(const std::string& s) {
  if (s == "lookahead") return Method::Lookahead;
  if (s == "greedy") return Method::Greedy;
  if (s == "by") return Method::BensonYe;
  if (s == "all") return Method::All;
  throw ConfigError("unknown method: " + s);
}

void RunConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(eps_sdp, "eps_sdp");
  positive(eps_sdp_lookahead, "eps_sdp_lookahead");
  positive(eps_vfa, "eps_vfa");
  positive(lambda, "lambda");
  positive(eps_supp_rel, "eps_supp");
  positive(eps_gap_rel, "eps_gap");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (by_runs < 0) throw ConfigError("by_runs must be non-negative");
  if (oracle != "auto" && oracle != "bruteforce" && oracle != "structure" && oracle != "none") {
    throw ConfigError("unknown oracle: " + oracle);
  }
}

namespace {

double to_double(const char* name, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(std::string(name) + ": not a number: " + v);
  }
}

long long to_int(const char* name, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(std::string(name) + ": not an integer: " + v);
  }
}

bool to_bool(const char* name, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError(std::string(name) + ": not a boolean: " + v);
}

}  // namespace

void apply_env_overrides(RunConfig& c, const std::function<const char*(const char*)>& lookup) {
  auto get = [&](const char* name) -> const char* { return lookup ? lookup(name) : std::getenv(name); };
  auto with = [&](const char* name, auto&& apply) {
    if (const char* v = get(name); v != nullptr && *v != '\0') apply(name, std::string(v));
  };
  with("THETAVFA_EPS_SDP", [&](auto n, auto v) { c.eps_sdp = to_double(n, v); });
  with("THETAVFA_EPS_SDP_LOOKAHEAD", [&](auto n, auto v) { c.eps_sdp_lookahead = to_double(n, v); });
  with("THETAVFA_EPS_VFA", [&](auto n, auto v) { c.eps_vfa = to_double(n, v); });
  with("THETAVFA_LAMBDA", [&](auto n, auto v) { c.lambda = to_double(n, v); });
  with("THETAVFA_EPS_SUPP", [&](auto n, auto v) { c.eps_supp_rel = to_double(n, v); });
  with("THETAVFA_EPS_GAP", [&](auto n, auto v) { c.eps_gap_rel = to_double(n, v); });
  with("THETAVFA_SEED", [&](auto n, auto v) { c.seed = static_cast<std::uint64_t>(to_int(n, v)); });
  with("THETAVFA_METHOD", [&](auto, auto v) { c.method = parse_method(v); });
  with("THETAVFA_GREEDY_BACKEND", [&](auto, auto v) { c.greedy_backend = parse_vfa_backend(v); });
  with("THETAVFA_LOOKAHEAD_BACKEND", [&](auto, auto v) { c.lookahead_backend = parse_vfa_backend(v); });
  with("THETAVFA_LOOKAHEAD", [&](auto n, auto v) { c.lookahead = to_bool(n, v); });
  with("THETAVFA_PREPROCESS", [&](auto n, auto v) { c.preprocess = to_bool(n, v); });
  with("THETAVFA_ORACLE", [&](auto, auto v) { c.oracle = v; });
  with("THETAVFA_THREADS", [&](auto n, auto v) { c.threads = static_cast<int>(to_int(n, v)); });
  with("THETAVFA_BY_RUNS", [&](auto n, auto v) { c.by_runs = static_cast<int>(to_int(n, v)); });
  with("THETAVFA_ALLOW_LARGE", [&](auto n, auto v) { c.allow_large = to_bool(n, v); });
  with("THETAVFA_OUTPUT", [&](auto, auto v) { c.output = v; });
}

}  // namespace thetavfa

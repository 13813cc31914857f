#include "thetavfa/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "thetavfa/dimacs.hpp"
#include "thetavfa/linalg.hpp"

namespace thetavfa {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Eigen::MatrixXd bordered(double corner, const VectorXd& v, const MatrixXd& m) {
  const auto n = v.size();
  MatrixXd b(n + 1, n + 1);
  b(0, 0) = corner;
  b.block(1, 0, n, 1) = v;
  b.block(0, 1, 1, n) = v.transpose();
  b.block(1, 1, n, n) = m;
  return b;
}

double negative_part_min_eig(const MatrixXd& m) {
  return std::max(0.0, -linalg::min_eigenvalue(m));
}

}  // namespace

ThetaStandardForm build_standard_form(const WeightedGraph& g) {
  const int n = g.num_vertices();
  ThetaStandardForm f;
  f.formulation = ThetaFormulation::EdgeForm;
  auto& p = f.problem;
  p.dim = n + 1;
  for (int i = 0; i < n; ++i) p.objective.push_back({i + 1, 0, -0.5 * g.weight(i)});
  p.constraints.push_back({{0, 0, 1.0}});
  for (int i = 0; i < n; ++i) p.constraints.push_back({{i + 1, i + 1, 1.0}, {i + 1, 0, -0.5}});
  for (const auto& [u, v] : g.edges()) p.constraints.push_back({{v + 1, u + 1, 0.5}});
  p.rhs = VectorXd::Zero(static_cast<Eigen::Index>(p.constraints.size()));
  p.rhs[0] = 1.0;
  return f;
}

ThetaStandardForm build_nonedge_form(const WeightedGraph& g) {
  const int n = g.num_vertices();
  ThetaStandardForm f;
  f.formulation = ThetaFormulation::NonEdgeForm;
  auto& p = f.problem;
  p.dim = n + 1;
  p.objective.push_back({0, 0, 1.0});
  std::vector<double> rhs;
  for (int i = 0; i < n; ++i) {
    p.constraints.push_back({{i + 1, i + 1, 1.0}, {i + 1, 0, 1.0}});
    rhs.push_back(-g.weight(i));
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v)) continue;
      p.constraints.push_back({{v + 1, u + 1, 0.5}});
      rhs.push_back(0.0);
    }
  }
  p.rhs = Eigen::Map<VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  return f;
}

MatrixXd ThetaCertificate::bordered_primal() const { return bordered(1.0, x, X); }
MatrixXd ThetaCertificate::bordered_dual() const { return bordered(t, q, Q); }

namespace {

// Zeroing the off-pattern entries can leave the bordered dual slightly
// indefinite. Mixing in a strictly feasible point with Q = 2sI keeps every
// linear constraint exact and restores PSD at a small cost in t.
void repair_dual_psd(const WeightedGraph& g, ThetaCertificate& c) {
  const double neg = negative_part_min_eig(c.bordered_dual());
  if (neg == 0.0) return;
  const int n = g.num_vertices();
  double best_cost = std::numeric_limits<double>::infinity();
  double best_s = 1.0, best_t = 0.0, best_lam = 0.0;
  for (double s = 1.0 / 64; s <= 64.0; s *= 2) {
    double qq = 0.0;
    for (int i = 0; i < n; ++i) qq += std::pow(0.5 * g.weight(i) + s, 2);
    for (double t0 = 2 * s + qq / s; t0 <= 1e3 * (2 * s + qq / s); t0 *= 1.5) {
      // Eigenvalues of [[t0, |q|], [|q|, 2s]] plus 2s on the orthogonal part.
      const double mid = 0.5 * (t0 + 2 * s);
      const double rad = std::sqrt(0.25 * (t0 - 2 * s) * (t0 - 2 * s) + qq);
      const double lam = std::min(2 * s, mid - rad);
      if (lam <= 0.0) continue;
      const double cost = std::max(t0 - c.t, 0.0) / lam;
      if (cost < best_cost) {
        best_cost = cost;
        best_s = s;
        best_t = t0;
        best_lam = lam;
      }
    }
  }
  if (!std::isfinite(best_cost)) return;
  const double mix = 1.01 * neg / (best_lam + 1.01 * neg);
  c.t = (1 - mix) * c.t + mix * best_t;
  for (int i = 0; i < n; ++i) {
    c.q[i] = (1 - mix) * c.q[i] + mix * (-0.5 * g.weight(i) - best_s);
    c.Q(i, i) = -2.0 * c.q[i] - g.weight(i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) c.Q(i, j) *= 1 - mix;
    }
  }
}

ThetaCertificate solve_theta_as(const WeightedGraph& g, const ThetaOptions& options, ThetaFormulation form) {
  const int n = g.num_vertices();
  const ThetaStandardForm sf =
      form == ThetaFormulation::EdgeForm ? build_standard_form(g) : build_nonedge_form(g);

  sdp::Options so;
  so.tolerance = options.eps_sdp;
  so.max_iterations = options.max_iterations;
  so.step_fraction = options.step_fraction;
  const sdp::Solution sol = sdp::solve(sf.problem, so);

  // The edge form's matrix variable is the bordered primal; the non-edge
  // form's is the bordered dual.
  const MatrixXd& Ymat = form == ThetaFormulation::EdgeForm ? sol.X : sol.Z;
  const MatrixXd& Zmat = form == ThetaFormulation::EdgeForm ? sol.Z : sol.X;

  ThetaCertificate c;
  c.formulation = form == ThetaFormulation::EdgeForm ? "edge" : "nonedge";
  c.eps_sdp = options.eps_sdp;
  c.step_fraction = options.step_fraction;
  c.iterations = sol.iterations;
  c.status = sdp::to_string(sol.status);
  c.inexact = sol.status != sdp::Status::Optimal;

  // Primal side, rescaled so the corner is exactly one.
  const double y00 = Ymat(0, 0) > 0.0 ? Ymat(0, 0) : 1.0;
  c.x = Ymat.block(1, 0, n, 1) / y00;
  c.X = Ymat.block(1, 1, n, n) / y00;
  for (int i = 0; i < n; ++i) c.X(i, i) = c.x[i];
  for (const auto& [u, v] : g.edges()) c.X(u, v) = c.X(v, u) = 0.0;

  // Dual side.
  c.t = Zmat(0, 0);
  c.q = Zmat.block(1, 0, n, 1);
  c.Q = Zmat.block(1, 1, n, n);
  for (int i = 0; i < n; ++i) {
    c.Q(i, i) = -2.0 * c.q[i] - g.weight(i);
    for (int j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) continue;
      c.Q(i, j) = c.Q(j, i) = 0.0;
    }
  }
  repair_dual_psd(g, c);
  c.theta = c.t;
  c.gap = std::abs(g.weights().dot(c.x) - c.t) / (1.0 + std::abs(c.t));
  // The linear constraints hold exactly after cleanup, so the residuals of
  // the delivered certificate are the PSD violations.
  c.primal_res = negative_part_min_eig(c.bordered_primal());
  c.dual_res = negative_part_min_eig(c.bordered_dual());
  // The solver's own stopping test is on the raw iterate; the cleaned
  // certificate has to meet the tolerance as well.
  if (c.gap > options.eps_sdp || std::max(c.primal_res, c.dual_res) > options.eps_sdp / 10) c.inexact = true;
  return c;
}

double badness(const ThetaCertificate& c) {
  return std::max({c.gap / c.eps_sdp, 10 * c.primal_res / c.eps_sdp, 10 * c.dual_res / c.eps_sdp});
}

}  // namespace

ThetaCertificate solve_theta(const WeightedGraph& g, const ThetaOptions& options) {
  const int n = g.num_vertices();
  if (n < 1) throw GraphError("solve_theta needs at least one vertex");
  if (options.formulation != ThetaFormulation::Auto) return solve_theta_as(g, options, options.formulation);
  const long edge_cons = 1L + n + g.num_edges();
  const long nonedge_cons = n + (static_cast<long>(n) * (n - 1) / 2 - g.num_edges());
  const ThetaFormulation first =
      nonedge_cons < edge_cons ? ThetaFormulation::NonEdgeForm : ThetaFormulation::EdgeForm;
  ThetaCertificate c = solve_theta_as(g, options, first);
  if (!c.inexact) return c;
  // Near-singular Schur complements are specific to one side, so the other
  // formulation often finishes where this one stalled.
  const ThetaFormulation second =
      first == ThetaFormulation::EdgeForm ? ThetaFormulation::NonEdgeForm : ThetaFormulation::EdgeForm;
  ThetaCertificate d = solve_theta_as(g, options, second);
  d.iterations += c.iterations;
  return badness(d) < badness(c) ? d : c;
}

bool CertificateReport::ok() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const CertificateCheck* CertificateReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string CertificateReport::summary() const {
  std::ostringstream out;
  out.precision(3);
  for (const auto& c : checks) {
    out << (c.passed ? "  ok   " : "  FAIL ") << c.name << " = " << std::scientific << c.value
        << " (limit " << c.threshold << ")\n";
  }
  return out.str();
}

CertificateReport verify_certificate(const WeightedGraph& g, const ThetaCertificate& cert, double tol) {
  CertificateReport r;
  const int n = g.num_vertices();
  auto add = [&](std::string name, double value, double threshold) {
    r.checks.push_back({std::move(name), value, threshold, value <= threshold});
  };
  const bool dims = cert.x.size() == n && cert.q.size() == n && cert.X.rows() == n &&
                    cert.X.cols() == n && cert.Q.rows() == n && cert.Q.cols() == n;
  r.checks.push_back({"dimension", static_cast<double>(cert.x.size()), static_cast<double>(n), dims});
  if (!dims) return r;

  double diag = 0.0, pattern = 0.0, pdiag = 0.0, pedge = 0.0, sym = 0.0;
  for (int i = 0; i < n; ++i) {
    diag = std::max(diag, std::abs(cert.Q(i, i) + 2.0 * cert.q[i] + g.weight(i)));
    pdiag = std::max(pdiag, std::abs(cert.X(i, i) - cert.x[i]));
    for (int j = i + 1; j < n; ++j) {
      sym = std::max({sym, std::abs(cert.Q(i, j) - cert.Q(j, i)), std::abs(cert.X(i, j) - cert.X(j, i))});
      if (g.adjacent(i, j)) {
        pedge = std::max(pedge, std::abs(cert.X(i, j)));
      } else {
        pattern = std::max(pattern, std::abs(cert.Q(i, j)));
      }
    }
  }
  add("dual.diagonal", diag, tol);
  add("dual.nonedge_zero", pattern, tol);
  add("dual.psd", negative_part_min_eig(cert.bordered_dual()), tol);
  add("primal.diagonal", pdiag, tol);
  add("primal.edge_zero", pedge, tol);
  add("primal.psd", negative_part_min_eig(cert.bordered_primal()), tol);
  add("symmetry", sym, tol);
  add("objective.gap", std::abs(g.weights().dot(cert.x) - cert.t) / (1.0 + std::abs(cert.t)), tol);
  add("theta.matches_t", std::abs(cert.theta - cert.t), tol * (1.0 + std::abs(cert.t)));
  return r;
}

std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_hex_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ParseError("not a floating-point literal: " + s, 0);
  return v;
}

namespace {

nlohmann::json vec_json(const VectorXd& v) {
  auto a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(hex_double(v[i]));
  return a;
}

nlohmann::json mat_json(const MatrixXd& m) {
  auto data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(hex_double(m(i, j)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

double num(const nlohmann::json& j) {
  return j.is_string() ? parse_hex_double(j.get<std::string>()) : j.get<double>();
}

VectorXd vec_from(const nlohmann::json& j) {
  VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = num(j[i]);
  return v;
}

MatrixXd mat_from(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) throw ParseError("matrix data length mismatch", 0);
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = num(data[static_cast<std::size_t>(i * cols + k)]);
  }
  return m;
}

}  // namespace

std::string certificate_to_json(const ThetaCertificate& c) {
  nlohmann::json j;
  j["schema"] = "thetavfa.certificate/1";
  j["n"] = c.size();
  j["theta"] = hex_double(c.theta);
  j["x"] = vec_json(c.x);
  j["X"] = mat_json(c.X);
  j["t"] = hex_double(c.t);
  j["q"] = vec_json(c.q);
  j["Q"] = mat_json(c.Q);
  j["gap"] = hex_double(c.gap);
  j["primal_res"] = hex_double(c.primal_res);
  j["dual_res"] = hex_double(c.dual_res);
  j["iterations"] = c.iterations;
  j["inexact"] = c.inexact;
  j["status"] = c.status;
  j["formulation"] = c.formulation;
  j["eps_sdp"] = hex_double(c.eps_sdp);
  j["step_fraction"] = hex_double(c.step_fraction);
  return j.dump(1);
}

ThetaCertificate certificate_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ThetaCertificate c;
    c.theta = num(j.at("theta"));
    c.x = vec_from(j.at("x"));
    c.X = mat_from(j.at("X"));
    c.t = num(j.at("t"));
    c.q = vec_from(j.at("q"));
    c.Q = mat_from(j.at("Q"));
    c.gap = num(j.at("gap"));
    c.primal_res = num(j.at("primal_res"));
    c.dual_res = num(j.at("dual_res"));
    c.iterations = j.value("iterations", 0);
    c.inexact = j.value("inexact", false);
    c.status = j.value("status", std::string("optimal"));
    c.formulation = j.value("formulation", std::string("edge"));
    if (j.contains("eps_sdp")) c.eps_sdp = num(j["eps_sdp"]);
    if (j.contains("step_fraction")) c.step_fraction = num(j["step_fraction"]);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what(), 0);
  }
}

}  // namespace thetavfa

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "thetavfa/graph.hpp"
#include "thetavfa/vfa.hpp"

namespace thetavfa {

class LpSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliqueLpOptions {
  /// Instances above this size are refused (clique enumeration and the
  /// dense normal equations are only meant for test-sized graphs).
  int max_vertices = 40;
  std::size_t clique_budget = 100000;
  double tolerance = 1e-10;
  int max_iterations = 200;
  /// Threshold used by the strict-complementarity report.
  double complementarity_eps = 1e-6;
};

/// Optimal pair of the clique LP
///   primal: max w^T x  s.t. x(C) <= 1 for every clique C, x >= 0
///   dual:   min sum mu_C  s.t. sum_{C containing i} mu_C >= w_i, mu >= 0
/// over all maximal cliques plus the singletons.
struct LpDualCertificate {
  std::vector<VertexSet> cliques;
  Eigen::VectorXd mu;
  Eigen::VectorXd x;
  /// 1 - x(C) per clique.
  Eigen::VectorXd clique_slack;
  /// sum_{C containing i} mu_C - w_i per vertex.
  Eigen::VectorXd vertex_surplus;
  double dual_value = 0.0;
  double primal_value = 0.0;
  int iterations = 0;
  /// Pairs where neither member clears complementarity_eps.
  int weak_clique_pairs = 0;
  int weak_vertex_pairs = 0;
  /// True when some singleton of a non-isolated vertex carries mass.
  bool singleton_mass = false;

  bool strictly_complementary() const { return weak_clique_pairs == 0 && weak_vertex_pairs == 0; }
};

LpDualCertificate solve_clique_lp(const WeightedGraph& g, const CliqueLpOptions& options = {});

/// Sum of mu_C over cliques meeting s.
double eval_lp_vfa(const LpDualCertificate& cert, const VertexSet& s);

/// Cliques with mu_C > eps.
std::vector<VertexSet> essential_cliques(const LpDualCertificate& cert, double eps);

/// Theta dual (t, q, Q) assembled from a feasible clique LP dual:
/// t = sum mu_C, q_i = -sum_{C containing i} mu_C,
/// Q_ij = sum_{C containing i and j} mu_C off the diagonal, Q_ii = -2 q_i - w_i.
/// This is sum_C p_C p_C^T + Diag(b) with b_i = vertex surplus, so the linear
/// constraints hold by construction.
struct SdpDualFromLp {
  double t = 0.0;
  Eigen::VectorXd q;
  Eigen::MatrixXd Q;
  /// Bordered [[t, q^T], [q, Q]].
  Eigen::MatrixXd M() const;
};

/// Throws LpSolveError when some vertex surplus is below -tol.
SdpDualFromLp lp_dual_to_sdp_dual(const WeightedGraph& g, const LpDualCertificate& cert, double tol = 1e-9);

class LpVfa : public Vfa {
 public:
  explicit LpVfa(LpDualCertificate cert) : cert_(std::move(cert)) {}
  int size() const override { return static_cast<int>(cert_.x.size()); }
  const LpDualCertificate& certificate() const { return cert_; }

 protected:
  double compute(const VertexSet& s) override { return eval_lp_vfa(cert_, s); }

 private:
  LpDualCertificate cert_;
};

}  // namespace thetavfa

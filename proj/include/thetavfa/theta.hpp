#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thetavfa/graph.hpp"
#include "thetavfa/sdp.hpp"

namespace thetavfa {

/// Which side of the theta pair is handed to the solver as the primal
/// matrix variable. Both give the same certificate; they differ in the
/// number of equality constraints (the size of the Schur complement).
enum class ThetaFormulation {
  /// Bordered primal [[1, x^T], [x, X]]: 1 + n + m constraints.
  EdgeForm,
  /// Bordered dual [[t, q^T], [q, Q]]: n + (non-edges) constraints.
  NonEdgeForm,
  /// Whichever has fewer constraints.
  Auto,
};

struct ThetaStandardForm {
  ThetaFormulation formulation = ThetaFormulation::EdgeForm;
  sdp::Problem problem;
};

/// Edge form: matrix variable Y of order n+1 indexed 0..n (vertex i is row
/// i+1), objective min -<W, Y> with W_{0,i} = w_i / 2, constraints Y_00 = 1,
/// Y_ii - Y_0i = 0 per vertex and Y_ij = 0 per edge. The dual slack is the
/// bordered matrix [[t, q^T], [q, Q]] of the theta dual.
ThetaStandardForm build_standard_form(const WeightedGraph& g);

/// Non-edge form: min t over the bordered dual matrix with Q_ii + 2 q_i = -w_i
/// and Q_ij = 0 on non-edges. The slack is the bordered primal matrix.
ThetaStandardForm build_nonedge_form(const WeightedGraph& g);

struct ThetaOptions {
  double eps_sdp = 1e-5;
  ThetaFormulation formulation = ThetaFormulation::Auto;
  int max_iterations = 150;
  double step_fraction = 0.98;
};

/// Primal (x, X) and dual (t, q, Q) solutions of the theta SDP pair. The
/// linear constraints hold exactly; residuals record what the cleanup
/// removed plus any negative curvature of the bordered matrices.
struct ThetaCertificate {
  double theta = 0.0;
  Eigen::VectorXd x;
  Eigen::MatrixXd X;
  double t = 0.0;
  Eigen::VectorXd q;
  Eigen::MatrixXd Q;
  /// |w^T x - t| / (1 + |t|)
  double gap = 0.0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  int iterations = 0;
  bool inexact = false;
  std::string status = "optimal";
  std::string formulation = "edge";
  double eps_sdp = 0.0;
  double step_fraction = 0.0;

  int size() const { return static_cast<int>(x.size()); }
  Eigen::MatrixXd bordered_primal() const;
  Eigen::MatrixXd bordered_dual() const;
};

/// Solves the theta SDP pair. A run that stops early still returns its best
/// iterate, flagged `inexact`, with the solver status in `status`.
ThetaCertificate solve_theta(const WeightedGraph& g, const ThetaOptions& options = {});

struct CertificateCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct CertificateReport {
  std::vector<CertificateCheck> checks;
  bool ok() const;
  const CertificateCheck* find(const std::string& name) const;
  std::string summary() const;
};

/// Re-derives every certificate invariant from the graph alone. Linear
/// residuals must be <= tol, PSD checks need minimum eigenvalue >= -tol and
/// the objective gap must be <= tol * (1 + |t|).
CertificateReport verify_certificate(const WeightedGraph& g, const ThetaCertificate& cert, double tol);

/// Matrices are row-major; reals are C99 hex-float strings so a replay sees
/// bit-identical values.
std::string certificate_to_json(const ThetaCertificate& cert);
ThetaCertificate certificate_from_json(const std::string& text);

std::string hex_double(double v);
double parse_hex_double(const std::string& s);

}  // namespace thetavfa

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace thetavfa::sdp {

/// One stored entry of a sparse symmetric matrix. Entries live in the lower
/// triangle (row >= col); an off-diagonal entry stands for both (row, col)
/// and (col, row).
struct Entry {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

using SparseSymmetric = std::vector<Entry>;

/// Standard-form pair
///   primal:  min <C, X>  s.t. <A_k, X> = b_k,  X PSD
///   dual:    max b^T y   s.t. sum_k y_k A_k + Z = C,  Z PSD
struct Problem {
  int dim = 0;
  SparseSymmetric objective;
  std::vector<SparseSymmetric> constraints;
  Eigen::VectorXd rhs;
};

struct Options {
  /// Target relative duality gap; infeasibilities are driven to a tenth of it.
  double tolerance = 1e-8;
  int max_iterations = 120;
  /// Fraction of the distance to the PSD boundary taken per step.
  double step_fraction = 0.98;
};

enum class Status { Optimal, MaxIterations, NumericalFailure };

std::string to_string(Status s);

struct Solution {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Eigen::MatrixXd Z;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  /// |pobj - dobj| / (1 + |pobj| + |dobj|)
  double relative_gap = 0.0;
  /// ||b - A(X)|| / (1 + ||b||)
  double primal_infeasibility = 0.0;
  /// ||C - Z - A^T y||_F / (1 + ||C||_F)
  double dual_infeasibility = 0.0;
  int iterations = 0;
  Status status = Status::MaxIterations;
  /// Iteration at which a numerical failure occurred, or -1.
  int failed_iteration = -1;
};

double inner(const SparseSymmetric& a, const Eigen::MatrixXd& x);
Eigen::MatrixXd to_dense(const SparseSymmetric& a, int dim);
double frobenius_norm(const SparseSymmetric& a);

/// Primal-dual path-following interior-point method: infeasible start,
/// HKM search direction, Mehrotra predictor-corrector, dense Schur
/// complement factored by Cholesky. Deterministic for a given problem.
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace thetavfa::sdp

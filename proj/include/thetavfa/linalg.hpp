#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

// Dense symmetric kernels. Symmetric inputs follow the Eigen convention:
// only the lower triangle is read, so symmetry is structural rather than
// checked. Everything is templated on the scalar type and accepts any dense
// Eigen expression.

namespace thetavfa::linalg {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultRankTol = 1e-8;

template <typename Scalar>
struct EigenDecomposition {
  Vector<Scalar> eigenvalues;   // descending
  Matrix<Scalar> eigenvectors;  // column k pairs with eigenvalues[k]
};

template <typename Derived>
EigenDecomposition<typename Derived::Scalar> eigh(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw LinalgError("eigh: matrix is not square");
  if (a.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(a.derived().template selfadjointView<Eigen::Lower>());
  if (solver.info() != Eigen::Success) throw LinalgError("eigh: iteration did not converge");
  EigenDecomposition<Scalar> out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

template <typename Derived>
typename Derived::Scalar min_eigenvalue(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.size() == 0) return Scalar(0);
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(a.derived().template selfadjointView<Eigen::Lower>(),
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw LinalgError("min_eigenvalue: no convergence");
  return solver.eigenvalues()(0);
}

/// Eigenvalues at or below rank_tol * lambda_max count as zero; slightly
/// negative ones (PSD up to tolerance) are clipped the same way.
template <typename Derived>
Matrix<typename Derived::Scalar> pseudo_inverse(const Eigen::MatrixBase<Derived>& a,
                                                double rank_tol = kDefaultRankTol) {
  using Scalar = typename Derived::Scalar;
  const auto dec = eigh(a);
  const Eigen::Index d = a.rows();
  if (d == 0) return Matrix<Scalar>(0, 0);
  const Scalar cutoff = Scalar(rank_tol) * std::max(dec.eigenvalues(0), Scalar(0));
  Vector<Scalar> inv = Vector<Scalar>::Zero(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    if (dec.eigenvalues(k) > cutoff && dec.eigenvalues(k) > Scalar(0)) inv(k) = Scalar(1) / dec.eigenvalues(k);
  }
  return dec.eigenvectors * inv.asDiagonal() * dec.eigenvectors.transpose();
}

/// True iff ||(I - Q Q^+) q|| <= tol * (1 + ||q||).
template <typename DerivedV, typename DerivedM>
bool in_range(const Eigen::MatrixBase<DerivedV>& q, const Eigen::MatrixBase<DerivedM>& Q, double tol = 1e-8,
              double rank_tol = kDefaultRankTol) {
  using Scalar = typename DerivedM::Scalar;
  if (q.size() == 0) return true;
  const auto dec = eigh(Q);
  const Scalar cutoff = Scalar(rank_tol) * std::max(dec.eigenvalues(0), Scalar(0));
  Vector<Scalar> residual = q;
  for (Eigen::Index k = 0; k < dec.eigenvalues.size(); ++k) {
    if (dec.eigenvalues(k) > cutoff && dec.eigenvalues(k) > Scalar(0)) {
      residual -= dec.eigenvectors.col(k) * dec.eigenvectors.col(k).dot(q);
    }
  }
  return residual.norm() <= Scalar(tol) * (Scalar(1) + q.norm());
}

template <typename Scalar>
struct QuadraticSolution {
  Vector<Scalar> y;
  /// y^T (Q + lambda I) y - 2 q^T y at the returned y.
  Scalar value = 0;
  int iterations = 0;
  /// False when the iteration budget ran out; y is then the best iterate.
  bool converged = true;
};

/// Minimizes y^T (Q + lambda I) y - 2 q^T y by conjugate gradients started
/// from `warm_start` (zero when empty). Stops once
/// ||(Q + lambda I) y - q|| <= eps * (1 + ||q||).
template <typename DerivedM, typename DerivedV>
QuadraticSolution<typename DerivedM::Scalar> solve_regularized_quadratic(
    const Eigen::MatrixBase<DerivedM>& Q, const Eigen::MatrixBase<DerivedV>& q, double lambda,
    const Vector<typename DerivedM::Scalar>& warm_start, double eps, int max_iterations = -1) {
  using Scalar = typename DerivedM::Scalar;
  const Eigen::Index d = q.size();
  QuadraticSolution<Scalar> out;
  out.y = warm_start.size() == d ? warm_start : Vector<Scalar>::Zero(d);
  if (d == 0) return out;
  if (max_iterations < 0) max_iterations = static_cast<int>(std::max<Eigen::Index>(100, 20 * d));

  const auto A = Q.derived().template selfadjointView<Eigen::Lower>();
  auto apply = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
    Vector<Scalar> r = A * v;
    r += Scalar(lambda) * v;
    return r;
  };
  const Scalar target = Scalar(eps) * (Scalar(1) + q.norm());
  Vector<Scalar> r = q - apply(out.y);
  Vector<Scalar> p = r;
  Scalar rr = r.squaredNorm();
  Vector<Scalar> best_y = out.y;
  Scalar best_r = std::sqrt(rr);
  int it = 0;
  while (std::sqrt(rr) > target && it < max_iterations) {
    const Vector<Scalar> Ap = apply(p);
    const Scalar pAp = p.dot(Ap);
    if (!(pAp > Scalar(0))) break;
    const Scalar alpha = rr / pAp;
    out.y += alpha * p;
    r -= alpha * Ap;
    const Scalar rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
    ++it;
    if (std::sqrt(rr) < best_r) {
      best_r = std::sqrt(rr);
      best_y = out.y;
    }
  }
  // Recurrence drift: confirm with a true residual.
  const Scalar true_r = (q - apply(out.y)).norm();
  if (true_r > best_r && true_r > target) out.y = best_y;
  out.iterations = it;
  out.converged = (q - apply(out.y)).norm() <= target;
  out.value = out.y.dot(apply(out.y)) - Scalar(2) * q.dot(out.y);
  return out;
}

}  // namespace thetavfa::linalg

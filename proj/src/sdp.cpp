#include "thetavfa/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thetavfa::sdp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Full (both triangles) coordinate form used by the Schur assembly.
struct FullEntry {
  int row;
  int col;
  double value;
};

std::vector<FullEntry> expand(const SparseSymmetric& a) {
  std::vector<FullEntry> out;
  out.reserve(2 * a.size());
  for (const auto& e : a) {
    out.push_back({e.row, e.col, e.value});
    if (e.row != e.col) out.push_back({e.col, e.row, e.value});
  }
  return out;
}

void add_scaled(MatrixXd& m, const SparseSymmetric& a, double s) {
  for (const auto& e : a) {
    m(e.row, e.col) += s * e.value;
    if (e.row != e.col) m(e.col, e.row) += s * e.value;
  }
}

VectorXd apply_constraints(const std::vector<SparseSymmetric>& cons, const MatrixXd& x) {
  VectorXd out(static_cast<Eigen::Index>(cons.size()));
  for (std::size_t k = 0; k < cons.size(); ++k) out[k] = inner(cons[k], x);
  return out;
}

MatrixXd adjoint(const std::vector<SparseSymmetric>& cons, const VectorXd& y, int dim) {
  MatrixXd m = MatrixXd::Zero(dim, dim);
  for (std::size_t k = 0; k < cons.size(); ++k) {
    if (y[k] != 0.0) add_scaled(m, cons[k], y[k]);
  }
  return m;
}

MatrixXd symmetrize(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha <= 1 (scaled by the step fraction) keeping x + alpha dx PSD.
// Returns a negative value when x itself is not positive definite.
double max_step(const MatrixXd& x, const MatrixXd& dx, double fraction) {
  Eigen::LLT<MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return -1.0;
  MatrixXd w = llt.matrixL().solve(dx);
  w = llt.matrixL().solve(w.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(symmetrize(w), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  if (lmin >= 0.0) return 1.0;
  return std::min(1.0, fraction * (-1.0 / lmin));
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal:
      return "optimal";
    case Status::MaxIterations:
      return "max-iterations";
    case Status::NumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

double inner(const SparseSymmetric& a, const MatrixXd& x) {
  double s = 0.0;
  for (const auto& e : a) s += (e.row == e.col ? 1.0 : 2.0) * e.value * x(e.row, e.col);
  return s;
}

MatrixXd to_dense(const SparseSymmetric& a, int dim) {
  MatrixXd m = MatrixXd::Zero(dim, dim);
  add_scaled(m, a, 1.0);
  return m;
}

double frobenius_norm(const SparseSymmetric& a) {
  double s = 0.0;
  for (const auto& e : a) s += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
  return std::sqrt(s);
}

Solution solve(const Problem& problem, const Options& options) {
  const int d = problem.dim;
  const auto m = static_cast<Eigen::Index>(problem.constraints.size());
  const MatrixXd C = to_dense(problem.objective, d);
  const VectorXd& b = problem.rhs;
  const double norm_b = b.norm();
  const double norm_c = C.norm();

  std::vector<std::vector<FullEntry>> full;
  full.reserve(problem.constraints.size());
  double max_a = 0.0, init_x = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    full.push_back(expand(problem.constraints[k]));
    const double na = frobenius_norm(problem.constraints[k]);
    max_a = std::max(max_a, na);
    init_x = std::max(init_x, (1.0 + std::abs(b[k])) / (1.0 + na));
  }

  // Infeasible start with scaled identities.
  const double xi = std::max({10.0, std::sqrt(static_cast<double>(d)), d * init_x});
  const double eta = std::max({10.0, std::sqrt(static_cast<double>(d)), max_a, norm_c});
  MatrixXd X = xi * MatrixXd::Identity(d, d);
  MatrixXd Z = eta * MatrixXd::Identity(d, d);
  VectorXd y = VectorXd::Zero(m);

  const double feas_target = options.tolerance / 10.0;
  const double gap_target = options.tolerance / 2.0;

  Solution sol;
  auto record = [&](int iter) {
    sol.X = X;
    sol.y = y;
    sol.Z = Z;
    sol.primal_objective = (C.cwiseProduct(X)).sum();
    sol.dual_objective = b.dot(y);
    sol.relative_gap = std::abs(sol.primal_objective - sol.dual_objective) /
                       (1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));
    sol.primal_infeasibility = (b - apply_constraints(problem.constraints, X)).norm() / (1.0 + norm_b);
    sol.dual_infeasibility = (C - Z - adjoint(problem.constraints, y, d)).norm() / (1.0 + norm_c);
    sol.iterations = iter;
  };
  // Merit <= 1 means every stopping criterion holds.
  auto merit = [&] {
    const double compl_gap = X.cwiseProduct(Z).sum() /
                             (1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));
    return std::max({sol.primal_infeasibility / feas_target, sol.dual_infeasibility / feas_target,
                     sol.relative_gap / gap_target, compl_gap / gap_target});
  };

  // Near the optimum the Schur complement loses accuracy and the
  // infeasibilities can creep back up; the best iterate seen is kept.
  record(0);
  Solution best = sol;
  double best_merit = merit();
  auto finish = [&](Status status, int failed_iteration) {
    best.status = status;
    best.failed_iteration = failed_iteration;
    return best;
  };
  MatrixXd schur(m, m);
  int stalled = 0;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const VectorXd rp = b - apply_constraints(problem.constraints, X);
    const MatrixXd Rd = C - Z - adjoint(problem.constraints, y, d);
    const double mu = X.cwiseProduct(Z).sum() / d;

    Eigen::LLT<MatrixXd> zchol(Z);
    if (zchol.info() != Eigen::Success) {
      return finish(Status::NumericalFailure, iter);
    }
    const MatrixXd Zi = zchol.solve(MatrixXd::Identity(d, d));

    // Schur complement M_kl = tr(A_k X A_l Z^{-1}); lower triangle only.
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto& ak = full[k];
      for (Eigen::Index l = 0; l <= k; ++l) {
        double s = 0.0;
        for (const auto& e : ak) {
          for (const auto& f : full[l]) s += e.value * f.value * X(e.col, f.row) * Zi(f.col, e.row);
        }
        schur(k, l) = s;
      }
    }
    Eigen::LLT<MatrixXd> mchol(schur.selfadjointView<Eigen::Lower>());
    Eigen::LDLT<MatrixXd> mldlt;
    const bool use_ldlt = mchol.info() != Eigen::Success;
    if (use_ldlt) {
      mldlt.compute(schur.selfadjointView<Eigen::Lower>());
      if (mldlt.info() != Eigen::Success) {
        return finish(Status::NumericalFailure, iter);
      }
    }
    auto schur_solve = [&](const VectorXd& rhs) -> VectorXd {
      return use_ldlt ? VectorXd(mldlt.solve(rhs)) : VectorXd(mchol.solve(rhs));
    };

    const MatrixXd XRdZi = symmetrize(X * Rd * Zi);
    // One refinement pass against the true residual rp - A(dX) recovers
    // accuracy the ill-conditioned Schur factor loses near the optimum.
    auto direction = [&](const MatrixXd& Rc, MatrixXd& dX, VectorXd& dy, MatrixXd& dZ) {
      dy = schur_solve(rp - apply_constraints(problem.constraints, Rc - XRdZi));
      dZ = Rd - adjoint(problem.constraints, dy, d);
      dX = Rc - symmetrize(X * dZ * Zi);
      VectorXd res = rp - apply_constraints(problem.constraints, dX);
      for (int pass = 0; pass < 4; ++pass) {
        const VectorXd fix = schur_solve(res);
        if (!fix.allFinite()) return;
        const MatrixXd dZfix = adjoint(problem.constraints, fix, d);
        const MatrixXd dXnew = dX + symmetrize(X * dZfix * Zi);
        const VectorXd res_new = rp - apply_constraints(problem.constraints, dXnew);
        if (!(res_new.norm() < res.norm())) return;
        dy += fix;
        dZ -= dZfix;
        dX = dXnew;
        res = res_new;
      }
    };

    // Predictor.
    MatrixXd dX, dZ;
    VectorXd dy;
    direction(-X, dX, dy, dZ);
    double ap = max_step(X, dX, options.step_fraction);
    double ad = max_step(Z, dZ, options.step_fraction);
    if (ap < 0.0 || ad < 0.0) {
      return finish(Status::NumericalFailure, iter);
    }
    const double mu_aff = (X + ap * dX).cwiseProduct(Z + ad * dZ).sum() / d;
    const double ratio = std::clamp(mu_aff / mu, 0.0, 1.0);
    const double expon = std::max(1.0, 3.0 * std::min(ap, ad) * std::min(ap, ad));
    const double sigma = std::pow(ratio, expon);

    // Corrector with the second-order term.
    const MatrixXd Rc = sigma * mu * Zi - X - symmetrize(dX * dZ * Zi);
    direction(Rc, dX, dy, dZ);
    ap = max_step(X, dX, options.step_fraction);
    ad = max_step(Z, dZ, options.step_fraction);
    if (ap <= 0.0 || ad <= 0.0 || !dX.allFinite() || !dZ.allFinite()) {
      return finish(Status::NumericalFailure, iter);
    }
    X = symmetrize(X + ap * dX);
    y += ad * dy;
    Z = symmetrize(Z + ad * dZ);

    record(iter);
    const double current = merit();
    if (current < best_merit) {
      best = sol;
      best_merit = current;
      stalled = 0;
    } else if (++stalled >= 5) {
      return finish(Status::NumericalFailure, iter);
    }
    if (best_merit <= 1.0) return finish(Status::Optimal, -1);
  }
  return finish(Status::MaxIterations, -1);
}

}  // namespace thetavfa::sdp

#include "thetavfa/clique_lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thetavfa/cliques.hpp"

namespace thetavfa {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double max_step(const VectorXd& v, const VectorXd& dv) {
  double a = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) a = std::min(a, -v[i] / dv[i]);
  }
  return a;
}

}  // namespace

LpDualCertificate solve_clique_lp(const WeightedGraph& g, const CliqueLpOptions& options) {
  const int n = g.num_vertices();
  if (n > options.max_vertices) {
    throw LpSolveError("clique LP refused: " + std::to_string(n) + " vertices exceeds the cap of " +
                       std::to_string(options.max_vertices));
  }
  LpDualCertificate cert;
  cert.cliques = enumerate_maximal_cliques(g, options.clique_budget);
  for (int i = 0; i < n; ++i) {
    if (g.degree(i) > 0) cert.cliques.push_back({i});
  }
  std::sort(cert.cliques.begin(), cert.cliques.end());
  const auto K = static_cast<Eigen::Index>(cert.cliques.size());
  if (n == 0) {
    cert.mu = VectorXd::Zero(K);
    cert.x = cert.clique_slack = cert.vertex_surplus = VectorXd();
    return cert;
  }

  // Standard form over z = (mu, s):  min c^T z  s.t. [A, -I] z = w, z >= 0,
  // where A is the vertex-clique incidence matrix. Its dual variable is the
  // clique LP primal x, with slack r = (1 - A^T x, x).
  MatrixXd A = MatrixXd::Zero(n, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    for (int v : cert.cliques[static_cast<std::size_t>(k)]) A(v, k) = 1.0;
  }
  const Eigen::Index N = K + n;
  MatrixXd B(n, N);
  B << A, -MatrixXd::Identity(n, n);
  VectorXd c = VectorXd::Zero(N);
  c.head(K).setOnes();
  const VectorXd& b = g.weights();

  VectorXd z = VectorXd::Constant(N, std::max(1.0, b.maxCoeff()));
  VectorXd r = VectorXd::Ones(N);
  VectorXd x = VectorXd::Zero(n);

  const double nb = 1.0 + b.norm();
  const double nc = 1.0 + c.norm();
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    const VectorXd rp = b - B * z;
    const VectorXd rd = c - B.transpose() * x - r;
    const double pobj = c.dot(z), dobj = b.dot(x);
    const double mu = z.dot(r) / static_cast<double>(N);
    if (rp.norm() / nb <= options.tolerance && rd.norm() / nc <= options.tolerance &&
        std::abs(pobj - dobj) / (1.0 + std::abs(pobj)) <= options.tolerance) {
      break;
    }
    const VectorXd d = z.cwiseQuotient(r);
    MatrixXd M = B * d.asDiagonal() * B.transpose();
    // Near the optimum z/r spans many orders of magnitude and M loses
    // definiteness to rounding; a tiny diagonal shift restores it.
    Eigen::LLT<MatrixXd> llt(M);
    for (double shift = 1e-14; llt.info() != Eigen::Success && shift < 1e-6; shift *= 100) {
      M.diagonal().array() += shift * M.diagonal().maxCoeff();
      llt.compute(M);
    }
    if (llt.info() != Eigen::Success) throw LpSolveError("clique LP: normal equations not positive definite");

    auto direction = [&](const VectorXd& rc, VectorXd& dz, VectorXd& dx, VectorXd& dr) {
      const VectorXd rinv_rc = rc.cwiseQuotient(r);
      dx = llt.solve(rp - B * rinv_rc + B * d.cwiseProduct(rd));
      dr = rd - B.transpose() * dx;
      dz = rinv_rc - d.cwiseProduct(dr);
    };
    VectorXd dz, dx, dr;
    direction(-z.cwiseProduct(r), dz, dx, dr);
    const double ap_aff = max_step(z, dz), ad_aff = max_step(r, dr);
    const double mu_aff = (z + ap_aff * dz).dot(r + ad_aff * dr) / static_cast<double>(N);
    const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);
    const VectorXd rc = VectorXd::Constant(N, sigma * mu) - z.cwiseProduct(r) - dz.cwiseProduct(dr);
    direction(rc, dz, dx, dr);
    const double ap = std::min(1.0, 0.99 * max_step(z, dz));
    const double ad = std::min(1.0, 0.99 * max_step(r, dr));
    z += ap * dz;
    x += ad * dx;
    r += ad * dr;
    if (!z.allFinite() || !x.allFinite()) throw LpSolveError("clique LP: iterate diverged");
  }
  if (iter >= options.max_iterations) throw LpSolveError("clique LP: iteration limit reached");
  cert.iterations = iter;

  cert.mu = z.head(K);
  // Close the remaining covering residual on the singletons so the dual is
  // feasible to rounding error.
  VectorXd cover = A * cert.mu;
  for (int i = 0; i < n; ++i) {
    const double deficit = g.weight(i) - cover[i];
    if (deficit <= 0.0) continue;
    const auto it = std::find(cert.cliques.begin(), cert.cliques.end(), VertexSet{i});
    cert.mu[it - cert.cliques.begin()] += deficit;
  }
  cert.x = x.cwiseMax(0.0);
  cover = A * cert.mu;
  cert.vertex_surplus = cover - g.weights();
  cert.clique_slack = VectorXd::Ones(K) - A.transpose() * cert.x;
  cert.dual_value = cert.mu.sum();
  cert.primal_value = g.weights().dot(cert.x);

  const double eps = options.complementarity_eps;
  for (Eigen::Index k = 0; k < K; ++k) {
    if (cert.mu[k] <= eps && cert.clique_slack[k] <= eps) ++cert.weak_clique_pairs;
    const auto& C = cert.cliques[static_cast<std::size_t>(k)];
    if (C.size() == 1 && g.degree(C[0]) > 0 && cert.mu[k] > eps) cert.singleton_mass = true;
  }
  for (int i = 0; i < n; ++i) {
    if (cert.x[i] <= eps && cert.vertex_surplus[i] <= eps) ++cert.weak_vertex_pairs;
  }
  return cert;
}

double eval_lp_vfa(const LpDualCertificate& cert, const VertexSet& s) {
  if (s.empty()) return 0.0;
  double v = 0.0;
  for (std::size_t k = 0; k < cert.cliques.size(); ++k) {
    const auto& C = cert.cliques[k];
    const bool meets = std::any_of(C.begin(), C.end(), [&](Vertex u) { return contains(s, u); });
    if (meets) v += cert.mu[static_cast<Eigen::Index>(k)];
  }
  return v;
}

std::vector<VertexSet> essential_cliques(const LpDualCertificate& cert, double eps) {
  std::vector<VertexSet> out;
  for (std::size_t k = 0; k < cert.cliques.size(); ++k) {
    if (cert.mu[static_cast<Eigen::Index>(k)] > eps) out.push_back(cert.cliques[k]);
  }
  return out;
}

MatrixXd SdpDualFromLp::M() const {
  const auto n = q.size();
  MatrixXd m(n + 1, n + 1);
  m(0, 0) = t;
  m.block(1, 0, n, 1) = q;
  m.block(0, 1, 1, n) = q.transpose();
  m.block(1, 1, n, n) = Q;
  return m;
}

SdpDualFromLp lp_dual_to_sdp_dual(const WeightedGraph& g, const LpDualCertificate& cert, double tol) {
  const int n = g.num_vertices();
  SdpDualFromLp out;
  out.q = VectorXd::Zero(n);
  out.Q = MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < cert.cliques.size(); ++k) {
    const double m = cert.mu[static_cast<Eigen::Index>(k)];
    if (m < 0.0) throw LpSolveError("LP dual has a negative multiplier");
    const auto& C = cert.cliques[k];
    out.t += m;
    for (std::size_t a = 0; a < C.size(); ++a) {
      out.q[C[a]] -= m;
      for (std::size_t b = a + 1; b < C.size(); ++b) {
        out.Q(C[a], C[b]) += m;
        out.Q(C[b], C[a]) += m;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const double surplus = -out.q[i] - g.weight(i);
    if (surplus < -tol) {
      throw LpSolveError("LP dual does not cover vertex " + std::to_string(i) + " (surplus " +
                         std::to_string(surplus) + ")");
    }
    out.Q(i, i) = -2.0 * out.q[i] - g.weight(i);
  }
  return out;
}

}  // namespace thetavfa

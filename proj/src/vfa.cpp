#include "thetavfa/vfa.hpp"

#include <stdexcept>

namespace thetavfa {

namespace {

void gather(const Eigen::VectorXd& q, const Eigen::MatrixXd& Q, const VertexSet& s, Eigen::VectorXd& qs,
            Eigen::MatrixXd& Qs) {
  const auto k = static_cast<Eigen::Index>(s.size());
  qs.resize(k);
  Qs.resize(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    qs[a] = q[s[a]];
    for (Eigen::Index b = 0; b <= a; ++b) Qs(a, b) = Qs(b, a) = Q(s[a], s[b]);
  }
}

void check_subset(const VertexSet& s, int n) {
  for (int v : s) {
    if (v < 0 || v >= n) throw std::out_of_range("VFA subset contains vertex " + std::to_string(v));
  }
}

}  // namespace

std::string to_string(VfaBackend b) {
  switch (b) {
    case VfaBackend::PseudoInverse:
      return "pinv";
    case VfaBackend::Tikhonov:
      return "tikhonov";
    case VfaBackend::RegularizedCG:
      return "cg";
  }
  return "unknown";
}

VfaBackend parse_vfa_backend(const std::string& s) {
  if (s == "pinv" || s == "pseudo-inverse") return VfaBackend::PseudoInverse;
  if (s == "tikhonov") return VfaBackend::Tikhonov;
  if (s == "cg" || s == "regularized-cg") return VfaBackend::RegularizedCG;
  throw std::invalid_argument("unknown VFA backend: " + s);
}

double sdp_vfa_pinv(const Eigen::VectorXd& q, const Eigen::MatrixXd& Q, const VertexSet& s, double rank_tol) {
  if (s.empty()) return 0.0;
  Eigen::VectorXd qs;
  Eigen::MatrixXd Qs;
  gather(q, Q, s, qs, Qs);
  const auto dec = linalg::eigh(Qs);
  const double cutoff = rank_tol * std::max(dec.eigenvalues(0), 0.0);
  double v = 0.0;
  for (Eigen::Index k = 0; k < dec.eigenvalues.size(); ++k) {
    const double lam = dec.eigenvalues(k);
    if (lam > cutoff && lam > 0.0) {
      const double c = dec.eigenvectors.col(k).dot(qs);
      v += c * c / lam;
    }
  }
  return v;
}

double sdp_vfa_tikhonov(const Eigen::VectorXd& q, const Eigen::MatrixXd& Q, const VertexSet& s, double delta) {
  if (s.empty()) return 0.0;
  Eigen::VectorXd qs;
  Eigen::MatrixXd Qs;
  gather(q, Q, s, qs, Qs);
  const auto dec = linalg::eigh(Qs);
  const Eigen::VectorXd c = dec.eigenvectors.transpose() * qs;
  double v = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) v += c[k] * c[k] / (std::max(dec.eigenvalues(k), 0.0) + delta);
  return v;
}

linalg::QuadraticSolution<double> sdp_vfa_cg(const Eigen::VectorXd& q, const Eigen::MatrixXd& Q,
                                             const VertexSet& s, double lambda, double eps,
                                             const Eigen::VectorXd& warm_start) {
  Eigen::VectorXd qs;
  Eigen::MatrixXd Qs;
  gather(q, Q, s, qs, Qs);
  return linalg::solve_regularized_quadratic(Qs, qs, lambda, warm_start, eps);
}

SdpVfa::SdpVfa(Eigen::VectorXd q, Eigen::MatrixXd Q, VfaOptions options)
    : q_(std::move(q)), Q_(std::move(Q)), options_(options) {
  if (Q_.rows() != q_.size() || Q_.cols() != q_.size()) throw std::invalid_argument("VFA: q and Q sizes differ");
  if (!(options_.lambda >= 0.0) || !(options_.eps_vfa > 0.0)) throw std::invalid_argument("VFA: bad tolerances");
  if (!(options_.tikhonov > 0.0)) throw std::invalid_argument("VFA: tikhonov shift must be positive");
  delta_ = options_.tikhonov * std::max(1.0, Q_.size() > 0 ? Q_.diagonal().maxCoeff() : 0.0);
}

SdpVfa SdpVfa::from_certificate(const ThetaCertificate& cert, VfaOptions options) {
  return SdpVfa(cert.q, cert.Q, options);
}

double SdpVfa::evaluate_readonly(const VertexSet& s) const {
  check_subset(s, size());
  if (s.empty()) return 0.0;
  if (options_.backend == VfaBackend::PseudoInverse) return sdp_vfa_pinv(q_, Q_, s, options_.rank_tol);
  if (options_.backend == VfaBackend::Tikhonov) return sdp_vfa_tikhonov(q_, Q_, s, delta_);
  const auto sol = sdp_vfa_cg(q_, Q_, s, options_.lambda, options_.eps_vfa);
  if (!sol.converged) return sdp_vfa_pinv(q_, Q_, s, options_.rank_tol);
  return -sol.value;
}

double SdpVfa::compute(const VertexSet& s) {
  check_subset(s, size());
  if (options_.backend == VfaBackend::PseudoInverse) return sdp_vfa_pinv(q_, Q_, s, options_.rank_tol);
  if (options_.backend == VfaBackend::Tikhonov) return sdp_vfa_tikhonov(q_, Q_, s, delta_);

  // Warm start from the most recent cached superset, restricted to s.
  Eigen::VectorXd warm;
  for (auto it = cache_.rbegin(); it != cache_.rend(); ++it) {
    if (!is_subset(s, it->set)) continue;
    warm.resize(static_cast<Eigen::Index>(s.size()));
    std::size_t p = 0;
    for (std::size_t a = 0; a < s.size(); ++a) {
      while (it->set[p] != s[a]) ++p;
      warm[static_cast<Eigen::Index>(a)] = it->y[static_cast<Eigen::Index>(p)];
    }
    ++warm_starts_;
    break;
  }
  auto sol = sdp_vfa_cg(q_, Q_, s, options_.lambda, options_.eps_vfa, warm);
  if (!sol.converged) {
    ++fallbacks_;
    return sdp_vfa_pinv(q_, Q_, s, options_.rank_tol);
  }
  if (options_.cache_capacity > 0) {
    if (static_cast<int>(cache_.size()) >= options_.cache_capacity) cache_.pop_front();
    cache_.push_back({s, std::move(sol.y)});
  }
  return -sol.value;
}

}  // namespace thetavfa

#pragma once

#include <deque>
#include <string>

#include <Eigen/Dense>

#include "thetavfa/graph.hpp"
#include "thetavfa/linalg.hpp"
#include "thetavfa/theta.hpp"

namespace thetavfa {

/// Set function evaluated by the rounding algorithms. Every call to
/// evaluate() counts, including the empty set.
class Vfa {
 public:
  virtual ~Vfa() = default;

  double evaluate(const VertexSet& s) {
    ++eval_count_;
    return s.empty() ? 0.0 : compute(s);
  }
  double operator()(const VertexSet& s) { return evaluate(s); }

  long eval_count() const { return eval_count_; }
  void reset_count() { eval_count_ = 0; }
  virtual int size() const = 0;

 protected:
  virtual double compute(const VertexSet& s) = 0;

 private:
  long eval_count_ = 0;
};

/// PseudoInverse: q_S^T Q_S^+ q_S with an eigenvalue cutoff.
/// Tikhonov: q_S^T (Q_S + delta I)^{-1} q_S by eigendecomposition, delta tiny;
///   exactly monotone in S, and equal to the pseudo-inverse form in the limit
///   whenever q_S lies in range(Q_S).
/// RegularizedCG: minus the minimum of y^T (Q_S + lambda I) y - 2 q_S^T y by
///   warm-started conjugate gradients.
enum class VfaBackend { PseudoInverse, Tikhonov, RegularizedCG };

std::string to_string(VfaBackend b);
VfaBackend parse_vfa_backend(const std::string& s);

struct VfaOptions {
  VfaBackend backend = VfaBackend::RegularizedCG;
  double lambda = 1e-4;
  double eps_vfa = 1e-6;
  double rank_tol = linalg::kDefaultRankTol;
  /// delta of the Tikhonov backend, relative to max(1, max_i Q_ii).
  double tikhonov = 1e-9;
  /// Number of recent (subset, minimizer) pairs kept for warm starts.
  int cache_capacity = 256;
};

/// q_S^T Q_S^+ q_S.
double sdp_vfa_pinv(const Eigen::VectorXd& q, const Eigen::MatrixXd& Q, const VertexSet& s,
                    double rank_tol = linalg::kDefaultRankTol);

/// q_S^T (Q_S + delta I)^{-1} q_S, negative eigenvalues of Q_S clipped to zero.
double sdp_vfa_tikhonov(const Eigen::VectorXd& q, const Eigen::MatrixXd& Q, const VertexSet& s, double delta);

/// Minimizer of y^T (Q_S + lambda I) y - 2 q_S^T y. The value of the VFA is
/// minus the returned objective.
linalg::QuadraticSolution<double> sdp_vfa_cg(const Eigen::VectorXd& q, const Eigen::MatrixXd& Q,
                                             const VertexSet& s, double lambda, double eps,
                                             const Eigen::VectorXd& warm_start = {});

/// V(S) = q_S^T Q_S^+ q_S built from the dual part of a theta certificate.
class SdpVfa : public Vfa {
 public:
  SdpVfa(Eigen::VectorXd q, Eigen::MatrixXd Q, VfaOptions options = {});
  static SdpVfa from_certificate(const ThetaCertificate& cert, VfaOptions options = {});

  int size() const override { return static_cast<int>(q_.size()); }
  const VfaOptions& options() const { return options_; }
  const Eigen::VectorXd& q() const { return q_; }
  const Eigen::MatrixXd& Q() const { return Q_; }

  /// Evaluations where CG missed its tolerance and the pseudo-inverse value
  /// was used instead.
  int fallback_count() const { return fallbacks_; }
  int warm_starts() const { return warm_starts_; }

  /// Same value as evaluate() but touches neither the counter nor the cache,
  /// so it is safe to call concurrently.
  double evaluate_readonly(const VertexSet& s) const;

  void clear_cache() { cache_.clear(); }

 protected:
  double compute(const VertexSet& s) override;

 private:
  struct CacheEntry {
    VertexSet set;
    Eigen::VectorXd y;
  };

  Eigen::VectorXd q_;
  Eigen::MatrixXd Q_;
  VfaOptions options_;
  std::deque<CacheEntry> cache_;
  int fallbacks_ = 0;
  int warm_starts_ = 0;
  double delta_ = 0.0;
};

}  // namespace thetavfa

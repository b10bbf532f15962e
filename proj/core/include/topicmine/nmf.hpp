#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace topicmine {

enum class NmfAlgorithm { mu, als, acls };

struct NmfConfig {
  NmfAlgorithm algorithm = NmfAlgorithm::acls;
  int max_iter = 0;  // 0 = algorithm default (200 for MU, 50 for ALS/ACLS)
  std::uint64_t seed = 0;
  double lambda_w = 0.5;  // ACLS ridge terms
  double lambda_h = 0.5;
  double denom_eps = 1e-9;  // MU denominator stabilizer
  bool early_stop = false;
  double early_stop_tol = 1e-6;

  int resolved_max_iter() const {
    if (max_iter > 0) return max_iter;
    return algorithm == NmfAlgorithm::mu ? 200 : 50;
  }
};

struct FactorPair {
  Eigen::MatrixXd W;  // m x k, term-topic
  Eigen::MatrixXd H;  // k x n, topic-document
  int k = 0;
  std::vector<double> history;  // reconstruction error after each iteration
  int singular_repairs = 0;     // normal-equation perturbations applied
};

// ||A - WH||_F without forming the dense residual.
double reconstruction_error(const Eigen::SparseMatrix<double>& A, const Eigen::MatrixXd& W,
                            const Eigen::MatrixXd& H);

// Multiplicative update: W,H random in (0,1], elementwise updates with the
// stabilized denominator. Exact zeros in W or H are locked forever.
FactorPair nmf_mu(const Eigen::SparseMatrix<double>& A, int k, const NmfConfig& config);
FactorPair nmf_mu_from(const Eigen::SparseMatrix<double>& A, Eigen::MatrixXd W0,
                       Eigen::MatrixXd H0, const NmfConfig& config);

// Alternating least squares: only W random; solve, clamp negatives, repeat.
FactorPair nmf_als(const Eigen::SparseMatrix<double>& A, int k, const NmfConfig& config);
FactorPair nmf_als_from(const Eigen::SparseMatrix<double>& A, Eigen::MatrixXd W0,
                        const NmfConfig& config);

// Ridge-regularized ALS; lambda_w = lambda_h = 0 reproduces ALS exactly.
FactorPair nmf_acls(const Eigen::SparseMatrix<double>& A, int k, const NmfConfig& config);
FactorPair nmf_acls_from(const Eigen::SparseMatrix<double>& A, Eigen::MatrixXd W0,
                         const NmfConfig& config);

// Dispatch on config.algorithm.
FactorPair factorize(const Eigen::SparseMatrix<double>& A, int k, const NmfConfig& config);

}  // namespace topicmine

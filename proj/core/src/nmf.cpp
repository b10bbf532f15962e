#include "topicmine/nmf.hpp"

#include <cmath>
#include <random>
#include <string>

#include "topicmine/errors.hpp"
#include "topicmine/rng.hpp"

namespace topicmine {
namespace {

void check_k(const Eigen::SparseMatrix<double>& A, int k) {
  const auto lim = std::min(A.rows(), A.cols());
  if (k < 1 || k > lim)
    throw BadKError("nmf: k = " + std::to_string(k) + " outside [1, " + std::to_string(lim) + "]");
}

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = uniform01(rng);
  return M;
}

void check_nonnegative(const Eigen::MatrixXd& M, const char* name) {
  if ((M.array() < 0.0).any())
    throw Error(std::string("nmf: non-negativity violated in ") + name + " (internal bug)");
}

// Solve (G + lambda I) X = RHS for X with G symmetric positive
// semidefinite. When lambda = 0 and G is numerically singular, perturb the
// diagonal by 1e-12 and continue; the caller counts these events.
Eigen::MatrixXd solve_normal(Eigen::MatrixXd G, double lambda, const Eigen::MatrixXd& rhs,
                             int& repairs) {
  if (lambda > 0.0) G.diagonal().array() += lambda;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  bool bad = ldlt.info() != Eigen::Success;
  if (!bad) {
    const auto& d = ldlt.vectorD();
    const double dmax = d.cwiseAbs().maxCoeff();
    const double dmin = d.cwiseAbs().minCoeff();
    bad = !(dmin > 0.0) || dmax / dmin > 1e12;
  }
  if (bad) {
    ++repairs;
    G.diagonal().array() += 1e-12;
    ldlt.compute(G);
  }
  return ldlt.solve(rhs);
}

}  // namespace

double reconstruction_error(const Eigen::SparseMatrix<double>& A, const Eigen::MatrixXd& W,
                            const Eigen::MatrixXd& H) {
  if (W.rows() != A.rows() || H.cols() != A.cols() || W.cols() != H.rows())
    throw ShapeMismatchError("reconstruction_error: shapes do not conform");
  const double a2 = A.squaredNorm();
  // <A, WH> over the sparse support only.
  double cross = 0.0;
  for (int c = 0; c < A.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it)
      cross += it.value() * W.row(it.row()).dot(H.col(c));
  const Eigen::MatrixXd wtw = W.transpose() * W;
  const Eigen::MatrixXd hht = H * H.transpose();
  const double wh2 = wtw.cwiseProduct(hht).sum();
  return std::sqrt(std::max(0.0, a2 - 2.0 * cross + wh2));
}

FactorPair nmf_mu_from(const Eigen::SparseMatrix<double>& A, Eigen::MatrixXd W0,
                       Eigen::MatrixXd H0, const NmfConfig& config) {
  const int k = static_cast<int>(W0.cols());
  check_k(A, k);
  if (W0.rows() != A.rows() || H0.cols() != A.cols() || H0.rows() != k)
    throw ShapeMismatchError("nmf_mu_from: factor shapes do not conform");
  if (config.denom_eps <= 0.0) throw Error("nmf_mu: denom_eps must be > 0");

  FactorPair out;
  out.W = std::move(W0);
  out.H = std::move(H0);
  out.k = k;
  const int iters = config.resolved_max_iter();
  for (int it = 0; it < iters; ++it) {
    const Eigen::MatrixXd wta = out.W.transpose() * A;
    const Eigen::MatrixXd wtw = out.W.transpose() * out.W;
    out.H.array() *= wta.array() / ((wtw * out.H).array() + config.denom_eps);

    const Eigen::MatrixXd aht = A * out.H.transpose();
    const Eigen::MatrixXd hht = out.H * out.H.transpose();
    out.W.array() *= aht.array() / ((out.W * hht).array() + config.denom_eps);

    check_nonnegative(out.H, "H");
    check_nonnegative(out.W, "W");
    out.history.push_back(reconstruction_error(A, out.W, out.H));
    if (config.early_stop && out.history.size() >= 2) {
      const double prev = out.history[out.history.size() - 2];
      if (std::abs(prev - out.history.back()) <= config.early_stop_tol * std::max(prev, 1e-300)) break;
    }
  }
  return out;
}

FactorPair nmf_mu(const Eigen::SparseMatrix<double>& A, int k, const NmfConfig& config) {
  check_k(A, k);
  std::mt19937_64 rng(config.seed);
  Eigen::MatrixXd W0 = random_matrix(A.rows(), k, rng);
  Eigen::MatrixXd H0 = random_matrix(k, A.cols(), rng);
  return nmf_mu_from(A, std::move(W0), std::move(H0), config);
}

namespace {

FactorPair alternating_ls(const Eigen::SparseMatrix<double>& A, Eigen::MatrixXd W0,
                          double lambda_w, double lambda_h, const NmfConfig& config) {
  const int k = static_cast<int>(W0.cols());
  check_k(A, k);
  if (W0.rows() != A.rows()) throw ShapeMismatchError("nmf: W0 shape does not conform");

  FactorPair out;
  out.W = std::move(W0);
  out.k = k;
  out.H.resize(k, A.cols());
  const int iters = config.resolved_max_iter();
  for (int it = 0; it < iters; ++it) {
    // (W^T W + lambda_h I) H = W^T A
    const Eigen::MatrixXd wta = out.W.transpose() * A;
    out.H = solve_normal(out.W.transpose() * out.W, lambda_h, wta, out.singular_repairs);
    out.H = out.H.cwiseMax(0.0);

    // (H H^T + lambda_w I) W^T = H A^T
    const Eigen::MatrixXd hat = (A * out.H.transpose()).transpose();
    out.W = solve_normal(out.H * out.H.transpose(), lambda_w, hat, out.singular_repairs).transpose();
    out.W = out.W.cwiseMax(0.0);

    check_nonnegative(out.H, "H");
    check_nonnegative(out.W, "W");
    out.history.push_back(reconstruction_error(A, out.W, out.H));
    if (config.early_stop && out.history.size() >= 2) {
      const double prev = out.history[out.history.size() - 2];
      if (std::abs(prev - out.history.back()) <= config.early_stop_tol * std::max(prev, 1e-300)) break;
    }
  }
  return out;
}

}  // namespace

FactorPair nmf_als_from(const Eigen::SparseMatrix<double>& A, Eigen::MatrixXd W0,
                        const NmfConfig& config) {
  return alternating_ls(A, std::move(W0), 0.0, 0.0, config);
}

FactorPair nmf_als(const Eigen::SparseMatrix<double>& A, int k, const NmfConfig& config) {
  check_k(A, k);
  std::mt19937_64 rng(config.seed);
  return nmf_als_from(A, random_matrix(A.rows(), k, rng), config);
}

FactorPair nmf_acls_from(const Eigen::SparseMatrix<double>& A, Eigen::MatrixXd W0,
                         const NmfConfig& config) {
  if (config.lambda_w < 0.0 || config.lambda_h < 0.0)
    throw Error("nmf_acls: lambda must be >= 0");
  return alternating_ls(A, std::move(W0), config.lambda_w, config.lambda_h, config);
}

FactorPair nmf_acls(const Eigen::SparseMatrix<double>& A, int k, const NmfConfig& config) {
  check_k(A, k);
  std::mt19937_64 rng(config.seed);
  return nmf_acls_from(A, random_matrix(A.rows(), k, rng), config);
}

FactorPair factorize(const Eigen::SparseMatrix<double>& A, int k, const NmfConfig& config) {
  switch (config.algorithm) {
    case NmfAlgorithm::mu: return nmf_mu(A, k, config);
    case NmfAlgorithm::als: return nmf_als(A, k, config);
    case NmfAlgorithm::acls: return nmf_acls(A, k, config);
  }
  throw Error("factorize: unknown algorithm");
}

}  // namespace topicmine

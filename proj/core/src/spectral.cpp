#include "topicmine/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "topicmine/errors.hpp"
#include "topicmine/rng.hpp"

namespace topicmine {
namespace {

// Dense L = D - C (diagonal of C zeroed first). Optionally symmetrically
// normalized; zero-degree rows stay zero rows either way.
Eigen::MatrixXd build_laplacian(const ConsensusMatrix& C, bool normalized) {
  const int n = C.size();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd deg(n);
  for (int i = 0; i < n; ++i) {
    double d = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double c = static_cast<double>(C.count(i, j));
      L(i, j) = -c;
      d += c;
    }
    L(i, i) = d;
    deg(i) = d;
  }
  if (normalized) {
    Eigen::VectorXd s(n);
    for (int i = 0; i < n; ++i) s(i) = deg(i) > 0.0 ? 1.0 / std::sqrt(deg(i)) : 0.0;
    L = s.asDiagonal() * L * s.asDiagonal();
  }
  return L;
}

// Matrix-free y = L x from the packed counts.
struct LaplacianOp {
  const ConsensusMatrix& C;
  bool normalized;
  Eigen::VectorXd deg;
  Eigen::VectorXd scale;  // D^{-1/2} (or 0 for isolated rows)

  explicit LaplacianOp(const ConsensusMatrix& c, bool norm) : C(c), normalized(norm) {
    const int n = C.size();
    deg.setZero(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = static_cast<double>(C.count(i, j));
        deg(i) += v;
        deg(j) += v;
      }
    scale.resize(n);
    for (int i = 0; i < n; ++i) scale(i) = deg(i) > 0.0 ? 1.0 / std::sqrt(deg(i)) : 0.0;
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    const int n = C.size();
    Eigen::VectorXd in = normalized ? Eigen::VectorXd(scale.asDiagonal() * x) : x;
    Eigen::VectorXd y = deg.asDiagonal() * in;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = static_cast<double>(C.count(i, j));
        if (v == 0.0) continue;
        y(i) -= v * in(j);
        y(j) -= v * in(i);
      }
    if (normalized) y = scale.asDiagonal() * y;
    return y;
  }

  double norm_bound() const {
    if (normalized) return 2.0;  // eigenvalues of the normalized Laplacian lie in [0, 2]
    return deg.size() ? 2.0 * deg.maxCoeff() : 0.0;
  }
};

// Lanczos with full reorthogonalization on M = sigma I - L, locking
// converged top pairs and deflating across restarts so eigenvalue
// multiplicities are recovered one copy per sweep.
std::vector<double> lanczos_smallest(const LaplacianOp& op, int m, const SpectralOptions& options) {
  const int n = op.C.size();
  const double sigma = op.norm_bound() + 1.0;
  const double scale = std::max(1.0, sigma);

  std::vector<Eigen::VectorXd> locked;
  std::vector<double> theta_locked;
  std::mt19937_64 rng(0x5eedULL);

  auto orthogonalize = [&](Eigen::VectorXd& v, const std::vector<Eigen::VectorXd>& basis, int count) {
    for (int pass = 0; pass < 2; ++pass)
      for (int b = 0; b < count; ++b) v -= basis[static_cast<std::size_t>(b)].dot(v) * basis[static_cast<std::size_t>(b)];
  };

  int sweeps = 0;
  while (static_cast<int>(locked.size()) < m) {
    if (++sweeps > options.lanczos_max_sweeps)
      throw ConvergenceFailureError(
          "lanczos: " + std::to_string(locked.size()) + " of " + std::to_string(m) +
          " eigenvalues converged after " + std::to_string(sweeps - 1) + " sweeps");

    const int want = m - static_cast<int>(locked.size());
    const int steps = std::min(n - static_cast<int>(locked.size()),
                               std::max(2 * want + 30, 60));
    if (steps <= 0) break;

    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform01(rng) - 0.5;
    orthogonalize(v, locked, static_cast<int>(locked.size()));
    if (v.norm() < 1e-12) continue;
    v /= v.norm();

    std::vector<Eigen::VectorXd> basis{v};
    std::vector<double> alpha, beta;
    for (int j = 0; j < steps; ++j) {
      Eigen::VectorXd w = sigma * basis.back() - op.apply(basis.back());
      const double a = basis.back().dot(w);
      alpha.push_back(a);
      w -= a * basis.back();
      if (basis.size() >= 2) w -= beta.back() * basis[basis.size() - 2];
      orthogonalize(w, basis, static_cast<int>(basis.size()));
      orthogonalize(w, locked, static_cast<int>(locked.size()));
      const double b = w.norm();
      if (b < 1e-13 * scale || j + 1 == steps) {
        beta.push_back(b);
        break;
      }
      beta.push_back(b);
      basis.push_back(w / b);
    }

    const int dim = static_cast<int>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      T(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < dim) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    if (es.info() != Eigen::Success) throw ConvergenceFailureError("lanczos: tridiagonal solve failed");

    const double resid_scale = beta.empty() ? 0.0 : beta.back();
    bool accepted = false;
    // Ritz values descending = candidates for the smallest eigenvalues of L.
    for (int idx = dim - 1; idx >= 0 && static_cast<int>(locked.size()) < m; --idx) {
      const double theta = es.eigenvalues()(idx);
      const double resid = std::abs(resid_scale * es.eigenvectors()(dim - 1, idx));
      const bool exhausted = dim == n - static_cast<int>(theta_locked.size());
      if (resid > options.lanczos_tol * scale && !exhausted) break;
      Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
      for (int b = 0; b < dim; ++b) y += es.eigenvectors()(b, idx) * basis[static_cast<std::size_t>(b)];
      orthogonalize(y, locked, static_cast<int>(locked.size()));
      const double ny = y.norm();
      if (ny < 1e-8) continue;
      locked.push_back(y / ny);
      theta_locked.push_back(theta);
      accepted = true;
    }
    (void)accepted;
  }

  std::vector<double> eigs;
  eigs.reserve(theta_locked.size());
  for (double t : theta_locked) eigs.push_back(sigma - t);
  std::sort(eigs.begin(), eigs.end());
  if (static_cast<int>(eigs.size()) > m) eigs.resize(static_cast<std::size_t>(m));
  return eigs;
}

}  // namespace

std::vector<double> laplacian_eigenvalues(const ConsensusMatrix& C, int m,
                                          const SpectralOptions& options) {
  const int n = C.size();
  if (m < 1 || m > n)
    throw Error("laplacian_eigenvalues: m = " + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");

  if (n <= options.dense_threshold) {
    const Eigen::MatrixXd L = build_laplacian(C, options.normalized);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw ConvergenceFailureError("laplacian_eigenvalues: dense symmetric solver failed");
    std::vector<double> out(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return out;
  }
  return lanczos_smallest(LaplacianOp(C, options.normalized), m, options);
}

GapChoice suggest_k(const std::vector<double>& eigenvalues, double zero_tol_rel,
                    double kernel_ratio) {
  const int p = static_cast<int>(eigenvalues.size());
  if (p < 2) throw Error("suggest_k: need at least two eigenvalues");

  GapChoice out;
  out.gaps.reserve(static_cast<std::size_t>(p - 1));
  for (int i = 0; i + 1 < p; ++i)
    out.gaps.push_back(eigenvalues[static_cast<std::size_t>(i + 1)] - eigenvalues[static_cast<std::size_t>(i)]);

  const double lam_max = eigenvalues.back();
  if (!(lam_max > 0.0)) {
    // Spectrum is identically zero: every point is its own component.
    out.gap_index = 1;
    out.suggested_k = p;
    return out;
  }
  const double zero_tol = zero_tol_rel * lam_max;
  int plateau = 0;
  while (plateau < p && eigenvalues[static_cast<std::size_t>(plateau)] <= zero_tol) ++plateau;

  // Candidate gaps (1-based position i = gap between lambda_i and
  // lambda_{i+1}): skip gaps strictly inside the kernel plateau, and skip
  // the first gap entirely when only the trivial zero sits below it.
  int best = -1;
  double best_gap = -1.0;
  for (int i = std::max(1, plateau); i <= p - 1; ++i) {
    if (plateau == 1 && i == 1) continue;
    const double g = out.gaps[static_cast<std::size_t>(i - 1)];
    if (g > best_gap) {
      best_gap = g;
      best = i;
    }
  }
  if (best < 0) {
    // Two eigenvalues, connected graph: nothing but the trivial gap.
    out.gap_index = 1;
    out.suggested_k = 2;
    return out;
  }

  out.gap_index = best;
  const double bottom = eigenvalues[static_cast<std::size_t>(best - 1)];
  const double top = eigenvalues[static_cast<std::size_t>(best)];
  if (bottom < kernel_ratio * top)
    out.suggested_k = best;  // the gap rises out of near-kernel values: count below it
  else
    out.suggested_k = best + 1;  // mid-spectrum gap: upper-end reading
  return out;
}

LaplacianResult analyze_consensus(const ConsensusMatrix& C, int m, const SpectralOptions& options) {
  LaplacianResult res;
  res.eigenvalues = laplacian_eigenvalues(C, m, options);
  if (res.eigenvalues.size() >= 2) {
    const GapChoice gc = suggest_k(res.eigenvalues, options.zero_tol_rel, options.kernel_ratio);
    res.gap_index = gc.gap_index;
    res.suggested_k = gc.suggested_k;
    res.gaps = gc.gaps;
  } else {
    res.suggested_k = 1;
  }
  return res;
}

}  // namespace topicmine

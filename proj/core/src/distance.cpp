#include "topicmine/distance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topicmine/errors.hpp"

namespace topicmine {
namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

double cosine_similarity(const Eigen::SparseVector<double>& x, const Eigen::SparseVector<double>& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) throw ZeroVectorError("cosine_similarity: zero vector");
  return clamp01(x.dot(y) / (nx * ny));
}

double cosine_similarity(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) throw ZeroVectorError("cosine_similarity: zero vector");
  return clamp01(x.dot(y) / (nx * ny));
}

DistanceMatrix pairwise_cosine_distance(const Eigen::SparseMatrix<double>& A) {
  const int n = static_cast<int>(A.cols());
  const Eigen::SparseMatrix<double>& M = A;

  std::vector<double> norms(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    const double nc = M.col(c).norm();
    if (nc == 0.0)
      throw ZeroVectorError("pairwise_cosine_distance: column " + std::to_string(c) + " is all zeros");
    norms[static_cast<std::size_t>(c)] = nc;
  }

  // Column index/value slices for merge-style sparse dot products.
  std::vector<const double*> vals(static_cast<std::size_t>(n));
  std::vector<const int*> rows(static_cast<std::size_t>(n));
  std::vector<int> nnz(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    const auto start = M.outerIndexPtr()[c];
    vals[static_cast<std::size_t>(c)] = M.valuePtr() + start;
    rows[static_cast<std::size_t>(c)] = M.innerIndexPtr() + start;
    nnz[static_cast<std::size_t>(c)] = static_cast<int>(M.outerIndexPtr()[c + 1] - start);
  }

  DistanceMatrix D(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dot = 0.0;
      int a = 0, b = 0;
      const auto ri = rows[static_cast<std::size_t>(i)], rj = rows[static_cast<std::size_t>(j)];
      const auto vi = vals[static_cast<std::size_t>(i)], vj = vals[static_cast<std::size_t>(j)];
      const int na = nnz[static_cast<std::size_t>(i)], nb = nnz[static_cast<std::size_t>(j)];
      while (a < na && b < nb) {
        if (ri[a] < rj[b]) ++a;
        else if (ri[a] > rj[b]) ++b;
        else dot += vi[a++] * vj[b++];
      }
      const double sim = clamp01(dot / (norms[static_cast<std::size_t>(i)] * norms[static_cast<std::size_t>(j)]));
      D.set(i, j, clamp01(1.0 - sim));
    }
  }
  return D;
}

std::vector<double> distance_quantiles(const DistanceMatrix& D, const std::vector<double>& levels) {
  std::vector<double> nonzero;
  nonzero.reserve(D.packed().size());
  for (double v : D.packed())
    if (v > 0.0) nonzero.push_back(v);
  std::sort(nonzero.begin(), nonzero.end());

  std::vector<double> out;
  out.reserve(levels.size());
  if (nonzero.empty()) return out;
  for (double q : levels) {
    auto pos = static_cast<std::size_t>(q * static_cast<double>(nonzero.size() - 1) + 0.5);
    pos = std::min(pos, nonzero.size() - 1);
    out.push_back(nonzero[pos]);
  }
  return out;
}

std::vector<double> distance_quantiles(const DistanceMatrix& D, double lo, double hi, int count) {
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    levels.push_back(count == 1 ? lo
                                : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  return distance_quantiles(D, levels);
}

}  // namespace topicmine

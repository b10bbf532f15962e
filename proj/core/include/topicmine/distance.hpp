#pragma once

#include <vector>

#include <Eigen/SparseCore>

namespace topicmine {

// Symmetric pairwise distance matrix with zero diagonal, stored as the
// packed strict upper triangle.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), tri_(tri_size(n), 0.0) {}

  int size() const { return n_; }

  double operator()(int i, int j) const {
    if (i == j) return 0.0;
    return tri_[index(i, j)];
  }

  void set(int i, int j, double v) { tri_[index(i, j)] = v; }

  const std::vector<double>& packed() const { return tri_; }

 private:
  static std::size_t tri_size(int n) {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  }
  std::size_t index(int i, int j) const {
    if (i > j) std::swap(i, j);
    const auto ii = static_cast<std::size_t>(i);
    const auto nn = static_cast<std::size_t>(n_);
    return ii * nn - ii * (ii + 1) / 2 + static_cast<std::size_t>(j - i) - 1;
  }

  int n_ = 0;
  std::vector<double> tri_;
};

// (x . y) / (|x| |y|), clamped to [0, 1] for nonnegative inputs.
double cosine_similarity(const Eigen::SparseVector<double>& x, const Eigen::SparseVector<double>& y);
double cosine_similarity(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// 1 - cosine similarity between every column pair. Throws ZeroVectorError
// naming the first all-zero column.
DistanceMatrix pairwise_cosine_distance(const Eigen::SparseMatrix<double>& A);

// Quantiles of the nonzero off-diagonal distances, used to pick DBSCAN eps
// sweeps. The first form takes explicit quantile levels, the second spaces
// `count` levels evenly over [lo, hi].
std::vector<double> distance_quantiles(const DistanceMatrix& D, const std::vector<double>& levels);
std::vector<double> distance_quantiles(const DistanceMatrix& D, double lo, double hi, int count);

}  // namespace topicmine

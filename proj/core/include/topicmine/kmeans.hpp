#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace topicmine {

// Read-only point set fed to k-means. Points are treated as directions:
// cosine distance ignores length, so every dot product is divided by the
// cached point norm.
class PointsView {
 public:
  virtual ~PointsView() = default;
  virtual int count() const = 0;
  virtual int dim() const = 0;
  virtual double norm(int i) const = 0;
  virtual double dot(int i, const Eigen::VectorXd& v) const = 0;
  // acc += w * x_i
  virtual void accumulate(int i, double w, Eigen::VectorXd& acc) const = 0;
};

class SparseColumnsView final : public PointsView {
 public:
  explicit SparseColumnsView(const Eigen::SparseMatrix<double>& A);
  int count() const override { return static_cast<int>(A_.cols()); }
  int dim() const override { return static_cast<int>(A_.rows()); }
  double norm(int i) const override { return norms_[static_cast<std::size_t>(i)]; }
  double dot(int i, const Eigen::VectorXd& v) const override;
  void accumulate(int i, double w, Eigen::VectorXd& acc) const override;

 private:
  const Eigen::SparseMatrix<double>& A_;
  std::vector<double> norms_;
};

class DenseRowsView final : public PointsView {
 public:
  explicit DenseRowsView(const Eigen::MatrixXd& rows);
  int count() const override { return static_cast<int>(rows_.rows()); }
  int dim() const override { return static_cast<int>(rows_.cols()); }
  double norm(int i) const override { return norms_[static_cast<std::size_t>(i)]; }
  double dot(int i, const Eigen::VectorXd& v) const override { return rows_.row(i).dot(v); }
  void accumulate(int i, double w, Eigen::VectorXd& acc) const override {
    acc += w * rows_.row(i).transpose();
  }

 private:
  const Eigen::MatrixXd& rows_;
  std::vector<double> norms_;
};

enum class KmeansInit {
  forgy,  // k distinct data points
  space,  // uniform random directions in the ambient space
};

struct KmeansOptions {
  int max_iter = 100;
  double tol = 1e-6;
  KmeansInit init = KmeansInit::forgy;
};

struct ClusterAssignment {
  int k = 0;
  std::vector<int> labels;
  double objective = 0.0;                 // sum of final point-to-centroid cosine distances
  std::vector<double> objective_history;  // one value per assignment pass
  std::vector<int> empty_clusters;        // clusters left empty (none after repair)
  int iterations = 0;
};

// Lloyd iteration under cosine distance: assign to the most similar unit
// centroid (ties to the lowest index), recompute centroids as renormalized
// means of member directions, repair empty clusters with the farthest
// point. Deterministic for a fixed seed.
ClusterAssignment kmeans(const PointsView& points, int k, std::uint64_t seed,
                         const KmeansOptions& options = {});

// One run per (k, repeat) over the inclusive range, each with a seed
// derived from (seed, k, repeat).
std::vector<ClusterAssignment> kmeans_sweep(const PointsView& points, int k_lo, int k_hi,
                                            int repeats, std::uint64_t seed,
                                            const KmeansOptions& options = {});

}  // namespace topicmine

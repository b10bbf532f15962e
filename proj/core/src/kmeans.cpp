#include "topicmine/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "topicmine/errors.hpp"
#include "topicmine/rng.hpp"

namespace topicmine {

SparseColumnsView::SparseColumnsView(const Eigen::SparseMatrix<double>& A) : A_(A) {
  norms_.resize(static_cast<std::size_t>(A.cols()));
  for (int c = 0; c < A.cols(); ++c) norms_[static_cast<std::size_t>(c)] = A.col(c).norm();
}

double SparseColumnsView::dot(int i, const Eigen::VectorXd& v) const {
  double s = 0.0;
  for (Eigen::SparseMatrix<double>::InnerIterator it(A_, i); it; ++it) s += it.value() * v(it.row());
  return s;
}

void SparseColumnsView::accumulate(int i, double w, Eigen::VectorXd& acc) const {
  for (Eigen::SparseMatrix<double>::InnerIterator it(A_, i); it; ++it)
    acc(it.row()) += w * it.value();
}

DenseRowsView::DenseRowsView(const Eigen::MatrixXd& rows) : rows_(rows) {
  norms_.resize(static_cast<std::size_t>(rows.rows()));
  for (int i = 0; i < rows.rows(); ++i) norms_[static_cast<std::size_t>(i)] = rows.row(i).norm();
}

namespace {

// Unit-direction centroid of the members of cluster c; zero vector if empty.
void update_centroids(const PointsView& pts, const std::vector<int>& labels, int k,
                      std::vector<Eigen::VectorXd>& centroids) {
  const int dim = pts.dim();
  for (int c = 0; c < k; ++c) centroids[static_cast<std::size_t>(c)].setZero(dim);
  for (int i = 0; i < pts.count(); ++i) {
    const int c = labels[static_cast<std::size_t>(i)];
    pts.accumulate(i, 1.0 / pts.norm(i), centroids[static_cast<std::size_t>(c)]);
  }
  for (int c = 0; c < k; ++c) {
    const double nc = centroids[static_cast<std::size_t>(c)].norm();
    if (nc > 0.0) centroids[static_cast<std::size_t>(c)] /= nc;
  }
}

}  // namespace

ClusterAssignment kmeans(const PointsView& points, int k, std::uint64_t seed,
                         const KmeansOptions& options) {
  const int n = points.count();
  if (k < 1 || k > n)
    throw BadKError("kmeans: k = " + std::to_string(k) + " out of range [1, " + std::to_string(n) + "]");
  if (options.max_iter < 1) throw Error("kmeans: max_iter must be >= 1");
  if (options.tol < 0.0) throw Error("kmeans: tol must be >= 0");
  for (int i = 0; i < n; ++i)
    if (points.norm(i) == 0.0)
      throw ZeroVectorError("kmeans: point " + std::to_string(i) + " is all zeros");

  std::mt19937_64 rng(seed);
  const int dim = points.dim();
  std::vector<Eigen::VectorXd> centroids(static_cast<std::size_t>(k));
  if (options.init == KmeansInit::forgy) {
    const auto picks = sample_without_replacement(n, k, rng);
    for (int c = 0; c < k; ++c) {
      auto& v = centroids[static_cast<std::size_t>(c)];
      v.setZero(dim);
      points.accumulate(picks[static_cast<std::size_t>(c)],
                        1.0 / points.norm(picks[static_cast<std::size_t>(c)]), v);
    }
  } else {
    for (int c = 0; c < k; ++c) {
      auto& v = centroids[static_cast<std::size_t>(c)];
      v.resize(dim);
      for (int r = 0; r < dim; ++r) v(r) = uniform01(rng);
      v /= v.norm();
    }
  }

  ClusterAssignment out;
  out.k = k;
  out.labels.assign(static_cast<std::size_t>(n), -1);
  std::vector<double> best_sim(static_cast<std::size_t>(n), 0.0);
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);

  auto assign_pass = [&]() -> bool {
    bool changed = false;
    std::fill(sizes.begin(), sizes.end(), 0);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double bs = -1.0;
      for (int c = 0; c < k; ++c) {
        const double s = points.dot(i, centroids[static_cast<std::size_t>(c)]) / points.norm(i);
        if (s > bs) {
          bs = s;
          best = c;
        }
      }
      if (out.labels[static_cast<std::size_t>(i)] != best) changed = true;
      out.labels[static_cast<std::size_t>(i)] = best;
      best_sim[static_cast<std::size_t>(i)] = bs;
      ++sizes[static_cast<std::size_t>(best)];
    }

    // Empty-cluster repair: seed each empty cluster with the point farthest
    // from its centroid, stealing only from clusters of size >= 2.
    for (int c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] != 0) continue;
      int victim = -1;
      double worst = 2.0;
      for (int i = 0; i < n; ++i) {
        const int li = out.labels[static_cast<std::size_t>(i)];
        if (sizes[static_cast<std::size_t>(li)] < 2) continue;
        if (best_sim[static_cast<std::size_t>(i)] < worst) {
          worst = best_sim[static_cast<std::size_t>(i)];
          victim = i;
        }
      }
      if (victim < 0) continue;  // cannot happen while k <= n
      --sizes[static_cast<std::size_t>(out.labels[static_cast<std::size_t>(victim)])];
      out.labels[static_cast<std::size_t>(victim)] = c;
      ++sizes[static_cast<std::size_t>(c)];
      auto& v = centroids[static_cast<std::size_t>(c)];
      v.setZero(dim);
      points.accumulate(victim, 1.0 / points.norm(victim), v);
      best_sim[static_cast<std::size_t>(victim)] = 1.0;
      changed = true;
    }
    return changed;
  };

  auto objective = [&]() {
    double obj = 0.0;
    for (int i = 0; i < n; ++i) obj += 1.0 - best_sim[static_cast<std::size_t>(i)];
    return obj;
  };

  std::vector<Eigen::VectorXd> previous;
  for (int it = 0; it < options.max_iter; ++it) {
    const bool changed = assign_pass();
    out.objective_history.push_back(objective());
    out.iterations = it + 1;
    if (!changed && it > 0) break;

    previous = centroids;
    update_centroids(points, out.labels, k, centroids);
    double moved = 0.0;
    for (int c = 0; c < k; ++c)
      moved = std::max(moved, (centroids[static_cast<std::size_t>(c)] -
                               previous[static_cast<std::size_t>(c)])
                                  .norm());
    if (moved < options.tol) {
      assign_pass();
      out.objective_history.push_back(objective());
      ++out.iterations;
      break;
    }
  }

  out.objective = out.objective_history.back();
  for (int c = 0; c < k; ++c)
    if (sizes[static_cast<std::size_t>(c)] == 0) out.empty_clusters.push_back(c);
  return out;
}

std::vector<ClusterAssignment> kmeans_sweep(const PointsView& points, int k_lo, int k_hi,
                                            int repeats, std::uint64_t seed,
                                            const KmeansOptions& options) {
  if (k_lo < 1 || k_hi < k_lo || k_hi > points.count())
    throw BadKError("kmeans_sweep: bad range [" + std::to_string(k_lo) + ", " + std::to_string(k_hi) + "]");
  if (repeats < 1) throw BadKError("kmeans_sweep: repeats must be >= 1");
  std::vector<ClusterAssignment> out;
  out.reserve(static_cast<std::size_t>((k_hi - k_lo + 1) * repeats));
  for (int k = k_lo; k <= k_hi; ++k)
    for (int r = 0; r < repeats; ++r)
      out.push_back(kmeans(points, k, derive_seed(seed, static_cast<std::uint64_t>(k),
                                                  static_cast<std::uint64_t>(r)),
                           options));
  return out;
}

}  // namespace topicmine

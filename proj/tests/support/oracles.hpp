#pragma once

// Independent reference implementations used as test oracles. Everything
// here is deliberately written as plain loops, separate from the library's
// code paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "topicmine/consensus_matrix.hpp"
#include "topicmine/dbscan.hpp"
#include "topicmine/distance.hpp"

namespace oracle {

// Three-way DBSCAN classification by brute force.
inline std::vector<topicmine::PointClass> dbscan_classify(const topicmine::DistanceMatrix& D,
                                                          double eps, int c) {
  const int n = D.size();
  std::vector<bool> dense(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    int cnt = 0;
    for (int j = 0; j < n; ++j)
      if (D(i, j) <= eps) ++cnt;
    dense[static_cast<std::size_t>(i)] = cnt >= c;
  }
  std::vector<topicmine::PointClass> out(static_cast<std::size_t>(n), topicmine::PointClass::noise);
  for (int i = 0; i < n; ++i) {
    if (dense[static_cast<std::size_t>(i)]) {
      out[static_cast<std::size_t>(i)] = topicmine::PointClass::dense;
      continue;
    }
    for (int j = 0; j < n; ++j) {
      if (D(i, j) <= eps && dense[static_cast<std::size_t>(j)]) {
        out[static_cast<std::size_t>(i)] = topicmine::PointClass::border;
        break;
      }
    }
  }
  return out;
}

// Clusters = connected components of the dense-dense adjacency, numbered by
// smallest dense member; border points join the earliest-numbered cluster
// among their dense neighbors.
inline std::vector<int> dbscan_cluster(const topicmine::DistanceMatrix& D, double eps, int c) {
  const int n = D.size();
  const auto cls = dbscan_classify(D, eps, c);
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (cls[static_cast<std::size_t>(i)] == topicmine::PointClass::dense &&
          cls[static_cast<std::size_t>(j)] == topicmine::PointClass::dense && D(i, j) <= eps)
        unite(i, j);

  // Number components by their smallest dense member.
  std::map<int, int> id_of_root;
  for (int i = 0; i < n; ++i)
    if (cls[static_cast<std::size_t>(i)] == topicmine::PointClass::dense) {
      const int r = find(i);
      if (!id_of_root.count(r)) id_of_root[r] = static_cast<int>(id_of_root.size());
    }

  std::vector<int> label(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i)
    if (cls[static_cast<std::size_t>(i)] == topicmine::PointClass::dense)
      label[static_cast<std::size_t>(i)] = id_of_root.at(find(i));
  for (int i = 0; i < n; ++i) {
    if (cls[static_cast<std::size_t>(i)] != topicmine::PointClass::border) continue;
    int best = -1;
    for (int j = 0; j < n; ++j)
      if (D(i, j) <= eps && cls[static_cast<std::size_t>(j)] == topicmine::PointClass::dense) {
        const int cand = label[static_cast<std::size_t>(j)];
        if (best < 0 || cand < best) best = cand;
      }
    label[static_cast<std::size_t>(i)] = best;
  }
  return label;
}

// Pair-counting consensus matrix.
inline topicmine::ConsensusMatrix build_consensus(const std::vector<std::vector<int>>& labelings) {
  const int n = static_cast<int>(labelings.front().size());
  topicmine::ConsensusMatrix C(n, static_cast<int>(labelings.size()));
  for (const auto& labels : labelings)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)])
          C.set(i, j, C.count(i, j) + 1);
  return C;
}

// Dense Frobenius reconstruction error.
inline double reconstruction_error(const Eigen::MatrixXd& A, const Eigen::MatrixXd& W,
                                   const Eigen::MatrixXd& H) {
  return (A - W * H).norm();
}

// Cyclic Jacobi eigenvalues of a symmetric matrix, ascending.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd A, int max_sweeps = 100) {
  const int n = static_cast<int>(A.rows());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    if (off < 1e-24 * std::max(1.0, A.squaredNorm())) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(A(p, q)) < 1e-300) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < n; ++r) {
          const double arp = A(r, p), arq = A(r, q);
          A(r, p) = c * arp - s * arq;
          A(r, q) = s * arp + c * arq;
        }
        for (int r = 0; r < n; ++r) {
          const double apr = A(p, r), aqr = A(q, r);
          A(p, r) = c * apr - s * aqr;
          A(q, r) = s * apr + c * aqr;
        }
      }
  }
  std::vector<double> eigs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eigs[static_cast<std::size_t>(i)] = A(i, i);
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

// Pair-counting precision/recall F1 between two labelings; label values are
// arbitrary, only co-membership matters. Points labeled < 0 in `truth` are
// skipped.
inline double pair_f1(const std::vector<int>& truth, const std::vector<int>& pred) {
  long tp = 0, fp = 0, fn = 0;
  const int n = static_cast<int>(truth.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (truth[static_cast<std::size_t>(i)] < 0 || truth[static_cast<std::size_t>(j)] < 0) continue;
      const bool same_t = truth[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(j)];
      const bool same_p = pred[static_cast<std::size_t>(i)] == pred[static_cast<std::size_t>(j)] &&
                          pred[static_cast<std::size_t>(i)] >= 0;
      if (same_t && same_p) ++tp;
      else if (!same_t && same_p) ++fp;
      else if (same_t && !same_p) ++fn;
    }
  if (tp == 0) return 0.0;
  const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return 2.0 * precision * recall / (precision + recall);
}

// Adjusted Rand index.
inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size());
  std::map<std::pair<int, int>, long> cont;
  std::map<int, long> ra, rb;
  for (int i = 0; i < n; ++i) {
    ++cont[{a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]}];
    ++ra[a[static_cast<std::size_t>(i)]];
    ++rb[b[static_cast<std::size_t>(i)]];
  }
  auto comb2 = [](long x) { return static_cast<double>(x) * static_cast<double>(x - 1) / 2.0; };
  double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [k, v] : cont) sum_ij += comb2(v);
  for (const auto& [k, v] : ra) sum_a += comb2(v);
  for (const auto& [k, v] : rb) sum_b += comb2(v);
  const double total = comb2(n);
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (sum_ij - expected) / (max_index - expected);
}

}  // namespace oracle

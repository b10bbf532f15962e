#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "topicmine/consensus_matrix.hpp"
#include "topicmine/distance.hpp"

namespace topicmine {

enum class PointClass : std::uint8_t { dense, border, noise };

struct DbscanParams {
  double eps = 0.0;
  int min_pts = 5;  // the paper's c; the neighborhood includes the point itself
};

// Dense: |{j : D(i,j) <= eps}| >= min_pts (self included).
// Border: not dense, but some dense point within eps.
// Noise: neither.
std::vector<PointClass> dbscan_classify(const DistanceMatrix& D, const DbscanParams& params);

// Density-reachability expansion over dense points, scanning seeds in index
// order; border points take the first cluster that reaches them. Noise
// stays -1.
std::vector<int> dbscan_cluster(const DistanceMatrix& D, const DbscanParams& params);

// Consensus-count semantics: the neighborhood of i is {j : counts(i,j) >= eps}
// (higher count = closer; the diagonal always qualifies).
std::vector<PointClass> dbscan_classify_counts(const ConsensusMatrix& C, std::uint32_t eps_count,
                                               int min_pts);
std::vector<int> dbscan_cluster_counts(const ConsensusMatrix& C, std::uint32_t eps_count,
                                       int min_pts);

// table[run][point]
using ClassificationTable = std::vector<std::vector<PointClass>>;

ClassificationTable classify_over_eps(const DistanceMatrix& D, const std::vector<double>& eps_list,
                                      int min_pts);
ClassificationTable classify_over_eps_counts(const ConsensusMatrix& C,
                                             const std::vector<std::uint32_t>& eps_counts,
                                             int min_pts);

// True noise flag: border-or-noise in strictly more than half of the runs.
std::vector<bool> vote_noise(const ClassificationTable& table);

}  // namespace topicmine

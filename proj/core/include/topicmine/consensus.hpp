#pragma once

#include <cstdint>
#include <vector>

#include "topicmine/consensus_matrix.hpp"
#include "topicmine/dbscan.hpp"
#include "topicmine/distance.hpp"
#include "topicmine/kmeans.hpp"

namespace topicmine {

// counts(i,j) = number of assignments placing i and j in the same cluster.
ConsensusMatrix build_consensus(const std::vector<ClusterAssignment>& assignments);

// Zero out entries with counts <= drop_tol * runs (off-diagonal only).
ConsensusMatrix apply_drop_tolerance(const ConsensusMatrix& C, double drop_tol);

// New matrix over the rows/cols listed in `keep` (ascending order).
ConsensusMatrix restrict_consensus(const ConsensusMatrix& C, const std::vector<int>& keep);

enum class Alg1Threshold {
  row_mean,    // compare row sums against the mean row sum
  entry_mean,  // compare row sums against the mean off-diagonal entry
};

// Drop-tolerance the matrix, then flag points whose surviving row sum falls
// below the average. Removes sparse rows; known to also remove low-density
// clusters wholesale.
std::vector<bool> noise_alg1_consensus(const ConsensusMatrix& C, double drop_tol,
                                       Alg1Threshold threshold = Alg1Threshold::row_mean);

// DBSCAN sweep over cosine distances, strict majority border-or-noise vote.
std::vector<bool> noise_alg2_dbscan_distance(const DistanceMatrix& D,
                                             const std::vector<double>& eps_list, int min_pts);

// DBSCAN sweep over co-clustering counts, same vote. Catches points whose
// cluster membership flips between runs.
std::vector<bool> noise_alg3_dbscan_consensus(const ConsensusMatrix& C,
                                              const std::vector<std::uint32_t>& eps_counts,
                                              int min_pts);

// Every integer threshold in [ceil(0.25 * runs), runs].
std::vector<std::uint32_t> default_eps_counts(int runs);

struct NoiseVerdict {
  std::vector<bool> alg1, alg2, alg3;
  std::vector<bool> combined;  // at least two of three
};

NoiseVerdict combine_noise(const std::vector<bool>& f1, const std::vector<bool>& f2,
                           const std::vector<bool>& f3);

}  // namespace topicmine

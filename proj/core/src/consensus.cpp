#include "topicmine/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topicmine/errors.hpp"

namespace topicmine {

ConsensusMatrix build_consensus(const std::vector<ClusterAssignment>& assignments) {
  if (assignments.empty()) throw Error("build_consensus: no assignments");
  const int n = static_cast<int>(assignments.front().labels.size());
  for (const auto& a : assignments)
    if (static_cast<int>(a.labels.size()) != n)
      throw LengthMismatchError("build_consensus: assignments disagree on point count");

  ConsensusMatrix C(n, static_cast<int>(assignments.size()));
  std::vector<std::vector<int>> buckets;
  for (const auto& a : assignments) {
    const int k = *std::max_element(a.labels.begin(), a.labels.end()) + 1;
    buckets.assign(static_cast<std::size_t>(k), {});
    for (int i = 0; i < n; ++i) buckets[static_cast<std::size_t>(a.labels[static_cast<std::size_t>(i)])].push_back(i);
    for (const auto& members : buckets)
      for (std::size_t a1 = 0; a1 < members.size(); ++a1)
        for (std::size_t a2 = a1 + 1; a2 < members.size(); ++a2)
          C.add_pair(members[a1], members[a2]);
  }
  return C;
}

ConsensusMatrix apply_drop_tolerance(const ConsensusMatrix& C, double drop_tol) {
  if (drop_tol < 0.0 || drop_tol >= 1.0) throw Error("apply_drop_tolerance: drop_tol must be in [0, 1)");
  ConsensusMatrix out = C;
  const double cut = drop_tol * C.runs();
  for (auto& v : out.packed())
    if (static_cast<double>(v) <= cut) v = 0;
  return out;
}

ConsensusMatrix restrict_consensus(const ConsensusMatrix& C, const std::vector<int>& keep) {
  ConsensusMatrix out(static_cast<int>(keep.size()), C.runs());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i + 1; j < keep.size(); ++j)
      out.set(static_cast<int>(i), static_cast<int>(j), C.count(keep[i], keep[j]));
  return out;
}

std::vector<bool> noise_alg1_consensus(const ConsensusMatrix& C, double drop_tol,
                                       Alg1Threshold threshold) {
  const ConsensusMatrix pruned = apply_drop_tolerance(C, drop_tol);
  const int n = pruned.size();
  std::vector<std::uint64_t> row_sums(static_cast<std::size_t>(n));
  std::uint64_t total = 0;
  for (int i = 0; i < n; ++i) {
    row_sums[static_cast<std::size_t>(i)] = pruned.row_sum(i);
    total += row_sums[static_cast<std::size_t>(i)];
  }
  double cutoff = 0.0;
  if (threshold == Alg1Threshold::row_mean) {
    cutoff = static_cast<double>(total) / static_cast<double>(n);
  } else {
    const auto pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    cutoff = pairs > 0.0 ? static_cast<double>(total) / pairs : 0.0;
  }
  std::vector<bool> flags(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    flags[static_cast<std::size_t>(i)] = static_cast<double>(row_sums[static_cast<std::size_t>(i)]) < cutoff;
  return flags;
}

std::vector<bool> noise_alg2_dbscan_distance(const DistanceMatrix& D,
                                             const std::vector<double>& eps_list, int min_pts) {
  return vote_noise(classify_over_eps(D, eps_list, min_pts));
}

std::vector<bool> noise_alg3_dbscan_consensus(const ConsensusMatrix& C,
                                              const std::vector<std::uint32_t>& eps_counts,
                                              int min_pts) {
  for (auto eps : eps_counts)
    if (eps < 1 || eps > static_cast<std::uint32_t>(C.runs()))
      throw Error("noise_alg3: eps count " + std::to_string(eps) + " outside [1, runs]");
  return vote_noise(classify_over_eps_counts(C, eps_counts, min_pts));
}

std::vector<std::uint32_t> default_eps_counts(int runs) {
  std::vector<std::uint32_t> out;
  const auto lo = static_cast<std::uint32_t>(std::ceil(0.25 * runs));
  for (std::uint32_t e = std::max<std::uint32_t>(1, lo); e <= static_cast<std::uint32_t>(runs); ++e)
    out.push_back(e);
  return out;
}

NoiseVerdict combine_noise(const std::vector<bool>& f1, const std::vector<bool>& f2,
                           const std::vector<bool>& f3) {
  if (f1.size() != f2.size() || f2.size() != f3.size())
    throw LengthMismatchError("combine_noise: flag vectors differ in length");
  NoiseVerdict v;
  v.alg1 = f1;
  v.alg2 = f2;
  v.alg3 = f3;
  v.combined.resize(f1.size());
  for (std::size_t i = 0; i < f1.size(); ++i) {
    const int votes = static_cast<int>(f1[i]) + static_cast<int>(f2[i]) + static_cast<int>(f3[i]);
    v.combined[i] = votes >= 2;
  }
  return v;
}

}  // namespace topicmine

#include "topicmine/dbscan.hpp"

#include <deque>

#include "topicmine/errors.hpp"

namespace topicmine {
namespace {

// neighbors(i) must include i itself.
using NeighborFn = std::function<std::vector<int>(int)>;

std::vector<PointClass> classify_generic(int n, const NeighborFn& neighbors, int min_pts) {
  std::vector<PointClass> cls(static_cast<std::size_t>(n), PointClass::noise);
  std::vector<std::vector<int>> hoods(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    hoods[static_cast<std::size_t>(i)] = neighbors(i);
    if (static_cast<int>(hoods[static_cast<std::size_t>(i)].size()) >= min_pts)
      cls[static_cast<std::size_t>(i)] = PointClass::dense;
  }
  for (int i = 0; i < n; ++i) {
    if (cls[static_cast<std::size_t>(i)] == PointClass::dense) continue;
    for (int j : hoods[static_cast<std::size_t>(i)]) {
      if (cls[static_cast<std::size_t>(j)] == PointClass::dense) {
        cls[static_cast<std::size_t>(i)] = PointClass::border;
        break;
      }
    }
  }
  return cls;
}

std::vector<int> cluster_generic(int n, const NeighborFn& neighbors, int min_pts) {
  std::vector<std::vector<int>> hoods(static_cast<std::size_t>(n));
  std::vector<bool> dense(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    hoods[static_cast<std::size_t>(i)] = neighbors(i);
    dense[static_cast<std::size_t>(i)] = static_cast<int>(hoods[static_cast<std::size_t>(i)].size()) >= min_pts;
  }

  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int seed = 0; seed < n; ++seed) {
    if (!dense[static_cast<std::size_t>(seed)] || label[static_cast<std::size_t>(seed)] != -1) continue;
    const int c = next++;
    std::deque<int> queue{seed};
    label[static_cast<std::size_t>(seed)] = c;
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      for (int q : hoods[static_cast<std::size_t>(p)]) {
        if (label[static_cast<std::size_t>(q)] != -1) continue;
        label[static_cast<std::size_t>(q)] = c;
        if (dense[static_cast<std::size_t>(q)]) queue.push_back(q);
      }
    }
  }
  return label;
}

NeighborFn distance_neighbors(const DistanceMatrix& D, double eps) {
  return [&D, eps](int i) {
    std::vector<int> out;
    for (int j = 0; j < D.size(); ++j)
      if (D(i, j) <= eps) out.push_back(j);
    return out;
  };
}

NeighborFn count_neighbors(const ConsensusMatrix& C, std::uint32_t eps) {
  return [&C, eps](int i) {
    std::vector<int> out;
    for (int j = 0; j < C.size(); ++j)
      if (C.count(i, j) >= eps) out.push_back(j);
    return out;
  };
}

void check_params(double eps, int min_pts) {
  if (eps <= 0.0) throw Error("dbscan: eps must be > 0");
  if (min_pts < 1) throw Error("dbscan: min_pts must be >= 1");
}

}  // namespace

std::vector<PointClass> dbscan_classify(const DistanceMatrix& D, const DbscanParams& params) {
  check_params(params.eps, params.min_pts);
  return classify_generic(D.size(), distance_neighbors(D, params.eps), params.min_pts);
}

std::vector<int> dbscan_cluster(const DistanceMatrix& D, const DbscanParams& params) {
  check_params(params.eps, params.min_pts);
  return cluster_generic(D.size(), distance_neighbors(D, params.eps), params.min_pts);
}

std::vector<PointClass> dbscan_classify_counts(const ConsensusMatrix& C, std::uint32_t eps_count,
                                               int min_pts) {
  check_params(static_cast<double>(eps_count), min_pts);
  return classify_generic(C.size(), count_neighbors(C, eps_count), min_pts);
}

std::vector<int> dbscan_cluster_counts(const ConsensusMatrix& C, std::uint32_t eps_count,
                                       int min_pts) {
  check_params(static_cast<double>(eps_count), min_pts);
  return cluster_generic(C.size(), count_neighbors(C, eps_count), min_pts);
}

ClassificationTable classify_over_eps(const DistanceMatrix& D, const std::vector<double>& eps_list,
                                      int min_pts) {
  if (eps_list.empty()) throw Error("classify_over_eps: empty eps list");
  ClassificationTable table;
  table.reserve(eps_list.size());
  for (double eps : eps_list) table.push_back(dbscan_classify(D, {eps, min_pts}));
  return table;
}

ClassificationTable classify_over_eps_counts(const ConsensusMatrix& C,
                                             const std::vector<std::uint32_t>& eps_counts,
                                             int min_pts) {
  if (eps_counts.empty()) throw Error("classify_over_eps_counts: empty eps list");
  ClassificationTable table;
  table.reserve(eps_counts.size());
  for (auto eps : eps_counts) table.push_back(dbscan_classify_counts(C, eps, min_pts));
  return table;
}

std::vector<bool> vote_noise(const ClassificationTable& table) {
  if (table.empty()) throw Error("vote_noise: empty table");
  const std::size_t n = table.front().size();
  for (const auto& run : table)
    if (run.size() != n) throw LengthMismatchError("vote_noise: ragged classification table");
  std::vector<bool> flags(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    int bad = 0;
    for (const auto& run : table)
      if (run[i] != PointClass::dense) ++bad;
    flags[i] = 2 * bad > static_cast<int>(table.size());
  }
  return flags;
}

}  // namespace topicmine

#pragma once

#include <cstdint>
#include <vector>

namespace topicmine {

// Symmetric co-clustering count matrix. Off-diagonal counts live in a
// packed strict upper triangle; the diagonal is implicitly `runs` (a point
// always co-clusters with itself).
class ConsensusMatrix {
 public:
  ConsensusMatrix() = default;
  ConsensusMatrix(int n, int runs)
      : n_(n), runs_(runs), tri_(tri_size(n), 0) {}

  int size() const { return n_; }
  int runs() const { return runs_; }

  std::uint32_t count(int i, int j) const {
    if (i == j) return static_cast<std::uint32_t>(runs_);
    return tri_[index(i, j)];
  }

  void set(int i, int j, std::uint32_t v) { tri_[index(i, j)] = v; }
  void add_pair(int i, int j) { ++tri_[index(i, j)]; }

  // Row sum excluding the diagonal.
  std::uint64_t row_sum(int i) const {
    std::uint64_t s = 0;
    for (int j = 0; j < n_; ++j)
      if (j != i) s += count(i, j);
    return s;
  }

  const std::vector<std::uint32_t>& packed() const { return tri_; }
  std::vector<std::uint32_t>& packed() { return tri_; }

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
  int runs_ = 0;
  std::vector<std::uint32_t> tri_;
};

}  // namespace topicmine

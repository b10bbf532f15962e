#pragma once

#include <vector>

#include "topicmine/consensus_matrix.hpp"

namespace topicmine {

struct SpectralOptions {
  bool normalized = false;   // D^{-1/2} L D^{-1/2} variant
  int dense_threshold = 2000;  // full symmetric solve at or below this size
  double zero_tol_rel = 1e-6;  // eigenvalues below this fraction of the max count as kernel
  double kernel_ratio = 0.5;   // gap bottom below this fraction of its top reads as a kernel step
  int lanczos_max_sweeps = 60;
  double lanczos_tol = 1e-10;
};

struct LaplacianResult {
  std::vector<double> eigenvalues;  // ascending, m smallest
  int gap_index = 0;                // 1-based position of the selected gap
  int suggested_k = 0;
  std::vector<double> gaps;  // gaps[i] = lambda_{i+2} - lambda_{i+1} (1-based positions)
};

// The m smallest eigenvalues of L = D - C, ascending. The diagonal of C is
// treated as zero, so D holds co-clustering degrees only.
std::vector<double> laplacian_eigenvalues(const ConsensusMatrix& C, int m,
                                          const SpectralOptions& options = {});

struct GapChoice {
  int gap_index = 0;  // 1-based; gap between eigenvalue gap_index and gap_index + 1
  int suggested_k = 0;
  std::vector<double> gaps;
};

// Largest-gap selection with two refinements: gaps inside the near-zero
// kernel plateau are skipped (as is the trivial first gap of a connected
// graph), and a gap whose lower end is itself near zero relative to its
// upper end suggests the count below the gap rather than above it.
GapChoice suggest_k(const std::vector<double>& eigenvalues, double zero_tol_rel = 1e-6,
                    double kernel_ratio = 0.5);

LaplacianResult analyze_consensus(const ConsensusMatrix& C, int m,
                                  const SpectralOptions& options = {});

}  // namespace topicmine

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "topicmine/consensus_matrix.hpp"
#include "topicmine/corpus.hpp"
#include "topicmine/kmeans.hpp"

namespace topicmine {

struct TopicSummary {
  int topic_id = 0;
  std::vector<std::pair<std::string, double>> top_terms;  // weight-descending
  std::vector<int> member_docs;                           // positions in the corpus handed in
  int topic_sentence = -1;                                // member position, -1 if none
};

// k-means over the rows of C (diagonal read as zero). Rows that are all
// zero never reach the solver: they are pre-assigned to a residual cluster
// with id k, in which case the returned assignment has k+1 clusters.
ClusterAssignment cluster_consensus(const ConsensusMatrix& C, int k, std::uint64_t seed,
                                    const KmeansOptions& options = {});

// The t largest entries of W(., topic), ties broken by vocabulary order.
std::vector<std::pair<std::string, double>> top_terms(const Eigen::MatrixXd& W,
                                                      const Vocabulary& vocab, int topic, int t);

// argmax per column of H; all-zero columns map to -1.
std::vector<int> assign_topics(const Eigen::MatrixXd& H);

// Among documents assigned to the topic, the one containing the most
// distinct top terms; ties by larger H, then by lower position.
int topic_sentence(const std::vector<Document>& docs,
                   const std::vector<std::string>& topic_terms, const Eigen::MatrixXd& H,
                   int topic, const std::vector<int>& assignment);

std::vector<TopicSummary> summarize(const std::vector<Document>& docs, const Eigen::MatrixXd& W,
                                    const Eigen::MatrixXd& H, const Vocabulary& vocab, int t = 20);

}  // namespace topicmine

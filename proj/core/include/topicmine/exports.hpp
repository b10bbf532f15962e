#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topicmine/consensus_matrix.hpp"
#include "topicmine/corpus.hpp"
#include "topicmine/kmeans.hpp"
#include "topicmine/topics.hpp"

namespace topicmine {

// GEXF 1.2 graph of the consensus matrix: one node per document (cluster id
// attribute), an undirected edge wherever counts(i,j) > threshold. Isolated
// nodes are kept.
void export_gexf_consensus(const ConsensusMatrix& C, const ClusterAssignment& labels,
                           const std::vector<Document>& docs, int threshold,
                           const std::string& path);

// Bipartite GEXF of documents and topics: an edge doc -> topic wherever
// H(topic, doc) / max_topic H(., doc) >= cutoff, weighted by H itself.
void export_gexf_bipartite(const Eigen::MatrixXd& H, const std::vector<int>& assignment,
                           const std::vector<Document>& docs, double cutoff,
                           const std::string& path);

// Per-group `term<TAB>count` files, count-descending then alphabetical,
// ready for word-cloud tools. Paths are `<prefix><group>.tsv`.
std::vector<std::string> export_wordcounts(const std::vector<Document>& docs,
                                           const std::vector<int>& group_of_doc, int group_count,
                                           const std::string& path_prefix);

void export_topics_tsv(const std::vector<TopicSummary>& summaries, const std::string& path);
void export_members_tsv(const std::vector<TopicSummary>& summaries,
                        const std::vector<Document>& docs, const std::string& path);
void export_eigenvalues_tsv(const std::vector<double>& eigenvalues, const std::string& path);
void export_consensus_tsv(const ConsensusMatrix& C, std::uint32_t min_count,
                          const std::string& path);
void export_factors_tsv(const Eigen::MatrixXd& M, const std::string& path);

std::string xml_escape(const std::string& s);

}  // namespace topicmine

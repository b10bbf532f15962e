#pragma once

#include <string>
#include <vector>

#include "topicmine/config.hpp"
#include "topicmine/consensus.hpp"
#include "topicmine/corpus.hpp"
#include "topicmine/nmf.hpp"
#include "topicmine/spectral.hpp"
#include "topicmine/topics.hpp"

namespace topicmine {

struct StageCounts {
  int ingested = 0;           // input records
  int empty_dropped = 0;      // no tokens after normalization
  int after_dedupe = 0;
  int duplicates_removed = 0;
  int uninformative_dropped = 0;  // empty TF-IDF columns
  int after_noise = 0;
  int noise_removed = 0;
  int isolated_excluded = 0;  // zero rows excluded from the eigengap
};

struct RunManifest {
  StageCounts counts;
  int chosen_k = 0;
  std::string k_source;  // "auto" or "config"
  int gap_index = 0;
  int singular_repairs = 0;
  std::vector<std::pair<std::string, double>> stage_ms;  // empty under strict_repro
  std::vector<std::string> outputs;                      // paths relative to out_dir, sorted
};

enum class RunMode {
  full,        // everything, with exports
  noise_only,  // stop after the noise ensemble
  eigs_only,   // stop after the eigengap
};

struct PipelineResult {
  RunManifest manifest;
  PipelineConfig config;                // resolved copy

  std::vector<Document> deduped_docs;   // the noise verdict indexes these
  NoiseVerdict verdict;
  std::vector<Document> kept_docs;      // after noise removal

  LaplacianResult spectrum;             // over the cleaned consensus matrix
  ConsensusMatrix consensus_kept;       // raw counts over kept_docs
  ClusterAssignment consensus_clusters; // final k-means on consensus rows
  FactorPair factors;                   // final NMF
  std::vector<int> topic_assignment;    // argmax of H per kept doc (-1 unassigned)
  std::vector<TopicSummary> summaries;
  Vocabulary vocabulary;                // over kept_docs
};

PipelineResult run_pipeline(const PipelineConfig& config, RunMode mode = RunMode::full);

// Structured text report of the run (topics, terms, sentences).
std::string format_report(const PipelineResult& result);
std::string format_eigs_report(const PipelineResult& result);
std::string format_noise_report(const PipelineResult& result);

}  // namespace topicmine

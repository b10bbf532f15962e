#include "topicmine/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "topicmine/distance.hpp"
#include "topicmine/errors.hpp"
#include "topicmine/exports.hpp"
#include "topicmine/rng.hpp"

namespace fs = std::filesystem;

namespace topicmine {
namespace {

using json = nlohmann::ordered_json;

std::vector<Document> ingest(const PipelineConfig& config, StageCounts& counts) {
  std::ifstream in(config.input_path, std::ios::binary);
  if (!in) throw IoError("cannot open input: " + config.input_path);

  Stoplist stoplist;
  if (config.stoplist_paths.empty()) {
    stoplist = Stoplist::builtin_default();
  } else {
    for (const auto& p : config.stoplist_paths) stoplist.merge(Stoplist::load_file(p));
  }
  TokenizeOptions topts;
  topts.lowercase = config.lowercase;
  topts.strip_urls = config.strip_urls;
  topts.strip_mentions = config.strip_mentions;
  topts.stem = config.stem;

  std::vector<Document> docs;
  std::string line;
  int id = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Document d;
    d.id = id++;
    if (config.input_format == InputFormat::tsv) {
      const auto tab = line.find('\t');
      if (tab == std::string::npos)
        throw IoError("input line " + std::to_string(d.id + 1) + ": expected id<TAB>text");
      d.external_id = line.substr(0, tab);
      d.raw = line.substr(tab + 1);
    } else {
      d.raw = line;
    }
    d.tokens = tokenize(d.raw, stoplist, topts);
    ++counts.ingested;
    if (d.tokens.empty()) {
      ++counts.empty_dropped;
      continue;
    }
    docs.push_back(std::move(d));
  }
  if (counts.ingested == 0) throw Error("input contains no documents");
  if (docs.empty()) throw AllDocumentsEmptyError("no document has any token after normalization");
  return docs;
}

// Rebuild until every column is nonzero; documents whose terms are all
// corpus-wide (idf 0) carry no signal and are dropped.
TdmBuild build_tdm_fixpoint(std::vector<Document>& docs, int& dropped) {
  while (true) {
    TdmBuild built = build_tdm(docs);
    bool all_nonzero = true;
    for (double norm : built.tdm.column_norms)
      if (norm <= 0.0) {
        all_nonzero = false;
        break;
      }
    if (all_nonzero) return built;
    std::vector<Document> surviving;
    surviving.reserve(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d)
      if (built.tdm.column_norms[d] > 0.0) surviving.push_back(std::move(docs[d]));
    dropped += static_cast<int>(docs.size() - surviving.size());
    docs = std::move(surviving);
  }
}

void write_text_file(const std::string& path, const std::string& content,
                     std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
  written.push_back(path);
}

json config_json(const PipelineConfig& c) {
  json j;
  j["input"] = {{"path", c.input_path},
                {"format", c.input_format == InputFormat::lines ? "lines" : "tsv"}};
  j["corpus"] = {{"stoplists", c.stoplist_paths},
                 {"stem", c.stem},
                 {"lowercase", c.lowercase},
                 {"strip_urls", c.strip_urls},
                 {"strip_mentions", c.strip_mentions}};
  j["kmeans"] = {{"k_min", c.sweep_k_min}, {"k_max", c.sweep_k_max},
                 {"repeats_per_k", c.repeats_per_k}, {"max_iter", c.kmeans.max_iter},
                 {"tol", c.kmeans.tol},
                 {"init", c.kmeans.init == KmeansInit::forgy ? "forgy" : "space"}};
  j["dbscan"] = {{"eps_quantiles", c.eps_quantiles}, {"quantile_lo", c.quantile_lo},
                 {"quantile_hi", c.quantile_hi}, {"quantile_count", c.quantile_count},
                 {"min_pts", c.min_pts}};
  j["noise"] = {{"drop_tol", c.drop_tol},
                {"threshold", c.alg1_threshold == Alg1Threshold::row_mean ? "row_mean" : "entry_mean"},
                {"eps_counts", c.eps_counts}};
  j["spectral"] = {{"prefix", c.eig_prefix}, {"normalized", c.normalized_laplacian},
                   {"dense_threshold", c.dense_threshold}, {"kernel_ratio", c.kernel_ratio}};
  const char* alg = c.nmf.algorithm == NmfAlgorithm::mu ? "mu"
                    : c.nmf.algorithm == NmfAlgorithm::als ? "als" : "acls";
  j["nmf"] = {{"algorithm", alg},
              {"k", c.k == 0 ? json("auto") : json(c.k)},
              {"max_iter", c.nmf.max_iter},
              {"lambda_w", c.nmf.lambda_w},
              {"lambda_h", c.nmf.lambda_h},
              {"denom_eps", c.nmf.denom_eps},
              {"early_stop", c.nmf.early_stop}};
  j["topics"] = {{"top_terms", c.top_terms}};
  j["export"] = {{"edge_threshold", c.edge_threshold}, {"bipartite_cutoff", c.bipartite_cutoff},
                 {"consensus_dump", c.dump_consensus}, {"factors_dump", c.dump_factors}};
  j["seed"] = c.seed;
  j["out"] = c.out_dir;
  j["strict_repro"] = c.strict_repro;
  return j;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config, RunMode mode) {
  config.validate();

  PipelineResult res;
  res.config = config;
  auto& manifest = res.manifest;

  auto stage = [&](const char* name, auto&& f) -> decltype(f()) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(f())>) {
        f();
        if (!config.strict_repro) {
          const double ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          manifest.stage_ms.emplace_back(name, std::floor(ms * 1000.0 + 0.5) / 1000.0);
        }
        return;
      } else {
        auto out = f();
        if (!config.strict_repro) {
          const double ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          manifest.stage_ms.emplace_back(name, std::floor(ms * 1000.0 + 0.5) / 1000.0);
        }
        return out;
      }
    } catch (const PipelineError&) {
      throw;
    } catch (const std::exception& e) {
      throw PipelineError(name, e.what());
    }
  };

  // ingest + dedupe
  std::vector<Document> docs = stage("ingest", [&] { return ingest(config, manifest.counts); });
  stage("dedupe", [&] {
    DedupResult dd = remove_duplicates(docs);
    manifest.counts.duplicates_removed = dd.removed_count;
    docs = std::move(dd.kept);
    manifest.counts.after_dedupe = static_cast<int>(docs.size());
  });

  // TF-IDF matrix over the deduplicated corpus
  TdmBuild tdm = stage("tdm", [&] {
    TdmBuild built = build_tdm_fixpoint(docs, manifest.counts.uninformative_dropped);
    return built;
  });
  res.deduped_docs = docs;

  // consensus sweep
  std::vector<ClusterAssignment> sweep = stage("sweep", [&] {
    const int n = static_cast<int>(docs.size());
    const int hi = std::min(config.sweep_k_max, n);
    const int lo = std::min(config.sweep_k_min, hi);
    SparseColumnsView view(tdm.tdm.A);
    return kmeans_sweep(view, lo, hi, config.repeats_per_k, config.seed, config.kmeans);
  });
  ConsensusMatrix consensus = stage("consensus", [&] { return build_consensus(sweep); });

  // ensemble noise removal
  std::vector<int> kept_idx;
  stage("noise", [&] {
    const DistanceMatrix D = pairwise_cosine_distance(tdm.tdm.A);
    std::vector<double> eps_list;
    if (!config.eps_quantiles.empty()) {
      eps_list = distance_quantiles(D, config.eps_quantiles);
    } else {
      eps_list = distance_quantiles(D, config.quantile_lo, config.quantile_hi, config.quantile_count);
    }
    const int n = static_cast<int>(docs.size());
    std::vector<bool> f1 = noise_alg1_consensus(consensus, config.drop_tol, config.alg1_threshold);
    std::vector<bool> f2 = eps_list.empty() ? std::vector<bool>(static_cast<std::size_t>(n), false)
                                            : noise_alg2_dbscan_distance(D, eps_list, config.min_pts);
    std::vector<std::uint32_t> eps_counts =
        config.eps_counts.empty() ? default_eps_counts(consensus.runs()) : config.eps_counts;
    for (auto& e : eps_counts) e = std::min<std::uint32_t>(e, static_cast<std::uint32_t>(consensus.runs()));
    std::vector<bool> f3 = noise_alg3_dbscan_consensus(consensus, eps_counts, config.min_pts);
    res.verdict = combine_noise(f1, f2, f3);
    for (int i = 0; i < n; ++i)
      if (!res.verdict.combined[static_cast<std::size_t>(i)]) kept_idx.push_back(i);
    manifest.counts.after_noise = static_cast<int>(kept_idx.size());
    manifest.counts.noise_removed = n - manifest.counts.after_noise;
    if (kept_idx.size() < 2) throw Error("fewer than 2 documents survive noise removal");
  });
  for (int i : kept_idx) res.kept_docs.push_back(docs[static_cast<std::size_t>(i)]);
  res.consensus_kept = restrict_consensus(consensus, kept_idx);

  if (mode == RunMode::noise_only) return res;

  // eigengap on the cleaned consensus matrix: drop-tolerance the counts and
  // leave out rows it isolates (each would add a spurious kernel value).
  stage("eigengap", [&] {
    const ConsensusMatrix pruned = apply_drop_tolerance(res.consensus_kept, config.drop_tol);
    std::vector<int> active;
    for (int i = 0; i < pruned.size(); ++i)
      if (pruned.row_sum(i) > 0) active.push_back(i);
    manifest.counts.isolated_excluded = pruned.size() - static_cast<int>(active.size());
    const ConsensusMatrix spectral_input =
        static_cast<int>(active.size()) == pruned.size() ? pruned : restrict_consensus(pruned, active);
    SpectralOptions sopts;
    sopts.normalized = config.normalized_laplacian;
    sopts.dense_threshold = config.dense_threshold;
    sopts.kernel_ratio = config.kernel_ratio;
    if (spectral_input.size() >= 2) {
      const int m = std::min(config.eig_prefix, spectral_input.size());
      res.spectrum = analyze_consensus(spectral_input, m, sopts);
    } else {
      res.spectrum.suggested_k = 1;
    }
  });

  const int n_kept = static_cast<int>(res.kept_docs.size());
  if (config.k > 0) {
    manifest.chosen_k = config.k;
    manifest.k_source = "config";
  } else {
    manifest.chosen_k = res.spectrum.suggested_k;
    manifest.k_source = "auto";
    manifest.gap_index = res.spectrum.gap_index;
  }
  manifest.chosen_k = std::max(1, std::min(manifest.chosen_k, n_kept));

  if (mode == RunMode::eigs_only) return res;

  // final clustering: k-means on consensus rows, NMF on the rebuilt TDM
  stage("cluster", [&] {
    res.consensus_clusters = cluster_consensus(res.consensus_kept, manifest.chosen_k,
                                               derive_seed(config.seed, 0x6b6d65616e73ULL),
                                               config.kmeans);
  });

  TdmBuild final_tdm = stage("nmf", [&] {
    TdmBuild built = build_tdm(res.kept_docs);  // zero columns stay unassigned
    NmfConfig nc = config.nmf;
    nc.seed = derive_seed(config.seed, 0x6e6d66ULL);
    const int k_lim = std::min(built.tdm.term_count(), built.tdm.doc_count());
    const int k_eff = std::max(1, std::min(manifest.chosen_k, k_lim));
    res.factors = factorize(built.tdm.A, k_eff, nc);
    manifest.singular_repairs = res.factors.singular_repairs;
    res.topic_assignment = assign_topics(res.factors.H);
    res.summaries = summarize(res.kept_docs, res.factors.W, res.factors.H, built.vocab,
                              config.top_terms);
    return built;
  });
  res.vocabulary = final_tdm.vocab;

  // exports
  std::vector<std::string> written;
  try {
    stage("export", [&] {
      const fs::path out_dir(config.out_dir);
      fs::create_directories(out_dir / "wordcounts");

      export_topics_tsv(res.summaries, (out_dir / "topics.tsv").string());
      written.push_back((out_dir / "topics.tsv").string());
      export_members_tsv(res.summaries, res.kept_docs, (out_dir / "members.tsv").string());
      written.push_back((out_dir / "members.tsv").string());
      export_gexf_consensus(res.consensus_kept, res.consensus_clusters, res.kept_docs,
                            config.edge_threshold, (out_dir / "consensus.gexf").string());
      written.push_back((out_dir / "consensus.gexf").string());
      export_gexf_bipartite(res.factors.H, res.topic_assignment, res.kept_docs,
                            config.bipartite_cutoff, (out_dir / "nmf_bipartite.gexf").string());
      written.push_back((out_dir / "nmf_bipartite.gexf").string());
      export_eigenvalues_tsv(res.spectrum.eigenvalues, (out_dir / "eigenvalues.tsv").string());
      written.push_back((out_dir / "eigenvalues.tsv").string());

      // word-count files for both clusterings
      auto wc1 = export_wordcounts(res.kept_docs, res.consensus_clusters.labels,
                                   res.consensus_clusters.k,
                                   (out_dir / "wordcounts" / "cluster_").string());
      written.insert(written.end(), wc1.begin(), wc1.end());
      auto wc2 = export_wordcounts(res.kept_docs, res.topic_assignment, res.factors.k,
                                   (out_dir / "wordcounts" / "topic_").string());
      written.insert(written.end(), wc2.begin(), wc2.end());

      if (config.dump_consensus) {
        export_consensus_tsv(res.consensus_kept, 1, (out_dir / "consensus.tsv").string());
        written.push_back((out_dir / "consensus.tsv").string());
      }
      if (config.dump_factors) {
        export_factors_tsv(res.factors.W, (out_dir / "nmf_w.tsv").string());
        written.push_back((out_dir / "nmf_w.tsv").string());
        export_factors_tsv(res.factors.H.transpose(), (out_dir / "nmf_h.tsv").string());
        written.push_back((out_dir / "nmf_h.tsv").string());
      }

      // manifest last so it can list every other artifact
      for (auto& p : written)
        p = fs::path(p).lexically_relative(out_dir).generic_string();
      std::sort(written.begin(), written.end());
      manifest.outputs = written;
      manifest.outputs.push_back("manifest.json");
      std::sort(manifest.outputs.begin(), manifest.outputs.end());

      json j;
      j["tool"] = "topicmine";
      j["config"] = config_json(config);
      j["config_toml"] = config_snapshot_toml(config);
      j["counts"] = {{"ingested", manifest.counts.ingested},
                     {"empty_dropped", manifest.counts.empty_dropped},
                     {"duplicates_removed", manifest.counts.duplicates_removed},
                     {"after_dedupe", manifest.counts.after_dedupe},
                     {"uninformative_dropped", manifest.counts.uninformative_dropped},
                     {"after_noise", manifest.counts.after_noise},
                     {"noise_removed", manifest.counts.noise_removed},
                     {"isolated_excluded", manifest.counts.isolated_excluded}};
      j["chosen_k"] = {{"value", manifest.chosen_k},
                       {"source", manifest.k_source},
                       {"gap_index", manifest.gap_index}};
      j["nmf"] = {{"singular_repairs", manifest.singular_repairs},
                  {"iterations", res.factors.history.size()}};
      if (!config.strict_repro) {
        json t;
        for (const auto& [name, ms] : manifest.stage_ms) t[name] = ms;
        j["timings_ms"] = t;
      }
      j["outputs"] = manifest.outputs;
      std::vector<std::string> tracked = written;  // manifest.json excluded from removal tracking
      write_text_file((out_dir / "manifest.json").string(), j.dump(2) + "\n", tracked);
    });
  } catch (...) {
    for (const auto& p : written) {
      std::error_code ec;
      fs::remove(fs::path(config.out_dir) / p, ec);
    }
    throw;
  }

  return res;
}

std::string format_report(const PipelineResult& res) {
  std::ostringstream o;
  const auto& c = res.manifest.counts;
  o << "documents: " << c.ingested << " ingested, " << c.empty_dropped << " empty, "
    << c.duplicates_removed << " duplicates removed, " << c.after_dedupe << " kept\n";
  o << "noise removal: " << c.noise_removed << " removed, " << c.after_noise << " kept\n";
  o << "k = " << res.manifest.chosen_k << " (" << res.manifest.k_source;
  if (res.manifest.k_source == "auto") o << ", gap after eigenvalue " << res.manifest.gap_index;
  o << ")\n\n";
  for (const auto& s : res.summaries) {
    o << "topic " << s.topic_id << " (" << s.member_docs.size() << " documents)\n";
    o << "  terms:";
    int shown = 0;
    for (const auto& [term, weight] : s.top_terms) {
      if (shown++ == 10) break;
      o << ' ' << term;
    }
    o << "\n";
    if (s.topic_sentence >= 0)
      o << "  sentence: " << res.kept_docs[static_cast<std::size_t>(s.topic_sentence)].raw << "\n";
    o << "\n";
  }
  return o.str();
}

std::string format_eigs_report(const PipelineResult& res) {
  std::ostringstream o;
  o << "smallest Laplacian eigenvalues of the cleaned consensus matrix\n";
  o << "  idx  eigenvalue      gap\n";
  const auto& ev = res.spectrum.eigenvalues;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    char buf[96];
    const double gap = i + 1 < ev.size() ? ev[i + 1] - ev[i] : 0.0;
    std::snprintf(buf, sizeof buf, "  %3zu  %-14.6g  %-14.6g", i + 1, ev[i], gap);
    o << buf;
    if (static_cast<int>(i + 1) == res.spectrum.gap_index) o << "  <- selected gap";
    o << "\n";
  }
  o << "suggested k = " << res.spectrum.suggested_k << "\n";
  return o.str();
}

std::string format_noise_report(const PipelineResult& res) {
  std::ostringstream o;
  const auto& v = res.verdict;
  const auto count = [](const std::vector<bool>& f) {
    return std::count(f.begin(), f.end(), true);
  };
  o << "noise report over " << res.deduped_docs.size() << " documents\n";
  o << "  algorithm 1 (consensus row sums): " << count(v.alg1) << " flagged\n";
  o << "  algorithm 2 (dbscan on distances): " << count(v.alg2) << " flagged\n";
  o << "  algorithm 3 (dbscan on consensus): " << count(v.alg3) << " flagged\n";
  o << "  combined (2 of 3): " << count(v.combined) << " removed, "
    << res.kept_docs.size() << " kept\n";
  return o.str();
}

}  // namespace topicmine

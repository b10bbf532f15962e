#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "topicmine/consensus.hpp"
#include "topicmine/kmeans.hpp"
#include "topicmine/nmf.hpp"

namespace topicmine {

// Minimal TOML reader covering the configuration surface: [section]
// headers (dotted names allowed), key = value with strings, integers,
// floats, booleans and flat arrays, plus '#' comments. Anything fancier is
// rejected with a ConfigError.
struct TomlValue {
  std::variant<bool, std::int64_t, double, std::string, std::vector<TomlValue>> v;

  bool is_string() const { return std::holds_alternative<std::string>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
  bool is_number() const { return is_int() || std::holds_alternative<double>(v); }
  bool is_array() const { return std::holds_alternative<std::vector<TomlValue>>(v); }
  double as_double() const;
};

class TomlTable {
 public:
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_array(const std::string& key) const;  // empty if absent
  std::vector<std::string> get_string_array(const std::string& key) const;

  void set(const std::string& key, TomlValue v) { values_[key] = std::move(v); }
  const std::map<std::string, TomlValue>& values() const { return values_; }

 private:
  const TomlValue* find(const std::string& key) const;
  std::map<std::string, TomlValue> values_;  // dotted keys, e.g. "kmeans.k_min"
};

TomlTable parse_toml(const std::string& text);
TomlTable load_toml_file(const std::string& path);

enum class InputFormat { lines, tsv };

struct PipelineConfig {
  // input
  std::string input_path;
  InputFormat input_format = InputFormat::lines;

  // corpus
  std::vector<std::string> stoplist_paths;  // empty = built-in English + Spanish
  bool stem = true;
  bool lowercase = true;
  bool strip_urls = true;
  bool strip_mentions = true;

  // k-means sweep feeding the consensus matrix
  int sweep_k_min = 2;
  int sweep_k_max = 12;
  int repeats_per_k = 1;
  KmeansOptions kmeans;

  // dbscan (noise algorithm 2)
  std::vector<double> eps_quantiles;  // explicit quantiles; empty = linspace below
  double quantile_lo = 0.05;
  double quantile_hi = 0.60;
  int quantile_count = 20;
  int min_pts = 5;

  // noise ensemble
  double drop_tol = 0.10;
  Alg1Threshold alg1_threshold = Alg1Threshold::row_mean;
  std::vector<std::uint32_t> eps_counts;  // empty = [ceil(0.25*runs), runs]

  // spectral
  int eig_prefix = 50;
  bool normalized_laplacian = false;
  int dense_threshold = 2000;
  double kernel_ratio = 0.5;

  // final clustering
  NmfConfig nmf;
  int k = 0;  // 0 = auto via the eigengap
  int top_terms = 20;

  // exports
  int edge_threshold = 8;
  double bipartite_cutoff = 0.25;
  bool dump_consensus = false;
  bool dump_factors = false;

  std::uint64_t seed = 42;
  std::string out_dir = "out";
  bool strict_repro = false;

  void validate() const;  // throws ConfigError
};

PipelineConfig config_from_toml(const TomlTable& table);
PipelineConfig load_config_file(const std::string& path);

// Resolved snapshot for the manifest, in stable key order.
std::string config_snapshot_toml(const PipelineConfig& config);

}  // namespace topicmine

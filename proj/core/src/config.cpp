#include "topicmine/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <cmath>
#include <fstream>
#include <sstream>

#include "topicmine/errors.hpp"

namespace topicmine {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Strip a trailing comment that is not inside a quoted string.
std::string strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    else if (c == '#' && !in_string) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

class ValueParser {
 public:
  explicit ValueParser(std::string_view text, int line_no) : s_(text), line_(line_no) {}

  TomlValue parse() {
    TomlValue v = parse_value();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters after value");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("toml line " + std::to_string(line_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  TomlValue parse_value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("missing value");
    const char c = s_[pos_];
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    return parse_scalar();
  }

  TomlValue parse_string() {
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < s_.size()) {
      const char c = s_[pos_++];
      if (c == '"') return TomlValue{out};
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("dangling escape");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case 'r': out.push_back('\r'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out.push_back(c);
      }
    }
    fail("unterminated string");
  }

  TomlValue parse_array() {
    ++pos_;  // '['
    std::vector<TomlValue> items;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ']') {
      ++pos_;
      return TomlValue{items};
    }
    while (true) {
      items.push_back(parse_value());
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated array");
      if (s_[pos_] == ',') {
        ++pos_;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ']') { ++pos_; break; }  // trailing comma
        continue;
      }
      if (s_[pos_] == ']') { ++pos_; break; }
      fail("expected ',' or ']' in array");
    }
    return TomlValue{items};
  }

  TomlValue parse_scalar() {
    std::size_t end = pos_;
    while (end < s_.size() && s_[end] != ',' && s_[end] != ']' &&
           !std::isspace(static_cast<unsigned char>(s_[end])))
      ++end;
    const std::string tok(s_.substr(pos_, end - pos_));
    pos_ = end;
    if (tok == "true") return TomlValue{true};
    if (tok == "false") return TomlValue{false};
    const bool looks_float = tok.find_first_of(".eE") != std::string::npos &&
                             tok.find_first_not_of("+-0123456789.eE") == std::string::npos;
    if (!looks_float) {
      std::int64_t iv = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
      if (ec == std::errc() && p == tok.data() + tok.size()) return TomlValue{iv};
    }
    try {
      std::size_t used = 0;
      const double dv = std::stod(tok, &used);
      if (used == tok.size()) return TomlValue{dv};
    } catch (...) {
    }
    fail("cannot parse value '" + tok + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

}  // namespace

double TomlValue::as_double() const {
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  if (std::holds_alternative<std::int64_t>(v)) return static_cast<double>(std::get<std::int64_t>(v));
  throw ConfigError("toml: value is not a number");
}

const TomlValue* TomlTable::find(const std::string& key) const {
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

std::string TomlTable::get_string(const std::string& key, const std::string& fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return std::get<std::string>(v->v);
}

std::int64_t TomlTable::get_int(const std::string& key, std::int64_t fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_int()) throw ConfigError("config key '" + key + "' must be an integer");
  return std::get<std::int64_t>(v->v);
}

double TomlTable::get_double(const std::string& key, double fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v->as_double();
}

bool TomlTable::get_bool(const std::string& key, bool fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_bool()) throw ConfigError("config key '" + key + "' must be a boolean");
  return std::get<bool>(v->v);
}

std::vector<double> TomlTable::get_double_array(const std::string& key) const {
  const auto* v = find(key);
  if (!v) return {};
  if (!v->is_array()) throw ConfigError("config key '" + key + "' must be an array");
  std::vector<double> out;
  for (const auto& item : std::get<std::vector<TomlValue>>(v->v)) out.push_back(item.as_double());
  return out;
}

std::vector<std::string> TomlTable::get_string_array(const std::string& key) const {
  const auto* v = find(key);
  if (!v) return {};
  if (!v->is_array()) throw ConfigError("config key '" + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : std::get<std::vector<TomlValue>>(v->v)) {
    if (!item.is_string()) throw ConfigError("config key '" + key + "' must be an array of strings");
    out.push_back(std::get<std::string>(item.v));
  }
  return out;
}

TomlTable parse_toml(const std::string& text) {
  TomlTable table;
  std::string prefix;
  int line_no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw ConfigError("toml line " + std::to_string(line_no) + ": malformed section header");
      if (line[1] == '[')
        throw ConfigError("toml line " + std::to_string(line_no) + ": arrays of tables are not supported");
      prefix = trim(line.substr(1, line.size() - 2));
      if (prefix.empty())
        throw ConfigError("toml line " + std::to_string(line_no) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("toml line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw ConfigError("toml line " + std::to_string(line_no) + ": empty key");
    ValueParser vp(std::string_view(line).substr(eq + 1), line_no);
    table.set(prefix.empty() ? key : prefix + "." + key, vp.parse());
  }
  return table;
}

TomlTable load_toml_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_toml(ss.str());
}

void PipelineConfig::validate() const {
  if (input_path.empty()) throw ConfigError("input path is required");
  if (sweep_k_min < 1 || sweep_k_max < sweep_k_min)
    throw ConfigError("kmeans sweep range must satisfy 1 <= k_min <= k_max");
  if (repeats_per_k < 1) throw ConfigError("kmeans.repeats_per_k must be >= 1");
  if (kmeans.max_iter < 1) throw ConfigError("kmeans.max_iter must be >= 1");
  if (kmeans.tol < 0.0) throw ConfigError("kmeans.tol must be >= 0");
  for (double q : eps_quantiles)
    if (q <= 0.0 || q > 1.0) throw ConfigError("dbscan.eps_quantiles entries must be in (0, 1]");
  if (eps_quantiles.empty()) {
    if (quantile_count < 1) throw ConfigError("dbscan.quantile_count must be >= 1");
    if (quantile_lo <= 0.0 || quantile_hi > 1.0 || quantile_hi < quantile_lo)
      throw ConfigError("dbscan quantile range must satisfy 0 < lo <= hi <= 1");
  }
  if (min_pts < 1) throw ConfigError("dbscan.min_pts must be >= 1");
  if (drop_tol < 0.0 || drop_tol >= 1.0) throw ConfigError("noise.drop_tol must be in [0, 1)");
  if (eig_prefix < 2) throw ConfigError("spectral.prefix must be >= 2");
  if (dense_threshold < 0) throw ConfigError("spectral.dense_threshold must be >= 0");
  if (kernel_ratio < 0.0 || kernel_ratio > 1.0)
    throw ConfigError("spectral.kernel_ratio must be in [0, 1]");
  if (k < 0) throw ConfigError("nmf.k must be a positive integer or 0 for auto");
  if (nmf.max_iter < 0) throw ConfigError("nmf.max_iter must be >= 1 (or 0 for the default)");
  if (nmf.lambda_w < 0.0 || nmf.lambda_h < 0.0) throw ConfigError("nmf lambdas must be >= 0");
  if (nmf.denom_eps <= 0.0) throw ConfigError("nmf.denom_eps must be > 0");
  if (top_terms < 1) throw ConfigError("topics.top_terms must be >= 1");
  if (edge_threshold < 0) throw ConfigError("export.edge_threshold must be >= 0");
  if (bipartite_cutoff < 0.0 || bipartite_cutoff > 1.0)
    throw ConfigError("export.bipartite_cutoff must be in [0, 1]");
  if (out_dir.empty()) throw ConfigError("output directory is required");
}

namespace {

const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys{
      "input.path", "input.format",
      "corpus.stoplists", "corpus.stem", "corpus.lowercase", "corpus.strip_urls",
      "corpus.strip_mentions",
      "kmeans.k_min", "kmeans.k_max", "kmeans.repeats_per_k", "kmeans.max_iter", "kmeans.tol",
      "kmeans.init",
      "dbscan.eps_quantiles", "dbscan.quantile_lo", "dbscan.quantile_hi", "dbscan.quantile_count",
      "dbscan.min_pts",
      "noise.drop_tol", "noise.threshold", "noise.eps_counts",
      "spectral.prefix", "spectral.normalized", "spectral.dense_threshold",
      "spectral.kernel_ratio",
      "nmf.algorithm", "nmf.k", "nmf.max_iter", "nmf.lambda_w", "nmf.lambda_h", "nmf.denom_eps",
      "nmf.early_stop",
      "topics.top_terms",
      "export.edge_threshold", "export.bipartite_cutoff", "export.consensus_dump",
      "export.factors_dump",
      "seed", "out", "strict_repro",
  };
  return keys;
}

}  // namespace

PipelineConfig config_from_toml(const TomlTable& t) {
  for (const auto& [key, value] : t.values())
    if (!known_config_keys().count(key))
      throw ConfigError("unknown config key '" + key + "'");
  PipelineConfig c;
  c.input_path = t.get_string("input.path", "");
  const std::string fmt = t.get_string("input.format", "lines");
  if (fmt == "lines") c.input_format = InputFormat::lines;
  else if (fmt == "tsv") c.input_format = InputFormat::tsv;
  else throw ConfigError("input.format must be 'lines' or 'tsv'");

  c.stoplist_paths = t.get_string_array("corpus.stoplists");
  c.stem = t.get_bool("corpus.stem", c.stem);
  c.lowercase = t.get_bool("corpus.lowercase", c.lowercase);
  c.strip_urls = t.get_bool("corpus.strip_urls", c.strip_urls);
  c.strip_mentions = t.get_bool("corpus.strip_mentions", c.strip_mentions);

  c.sweep_k_min = static_cast<int>(t.get_int("kmeans.k_min", c.sweep_k_min));
  c.sweep_k_max = static_cast<int>(t.get_int("kmeans.k_max", c.sweep_k_max));
  c.repeats_per_k = static_cast<int>(t.get_int("kmeans.repeats_per_k", c.repeats_per_k));
  c.kmeans.max_iter = static_cast<int>(t.get_int("kmeans.max_iter", c.kmeans.max_iter));
  c.kmeans.tol = t.get_double("kmeans.tol", c.kmeans.tol);
  const std::string init = t.get_string("kmeans.init", "forgy");
  if (init == "forgy") c.kmeans.init = KmeansInit::forgy;
  else if (init == "space") c.kmeans.init = KmeansInit::space;
  else throw ConfigError("kmeans.init must be 'forgy' or 'space'");

  c.eps_quantiles = t.get_double_array("dbscan.eps_quantiles");
  c.quantile_lo = t.get_double("dbscan.quantile_lo", c.quantile_lo);
  c.quantile_hi = t.get_double("dbscan.quantile_hi", c.quantile_hi);
  c.quantile_count = static_cast<int>(t.get_int("dbscan.quantile_count", c.quantile_count));
  c.min_pts = static_cast<int>(t.get_int("dbscan.min_pts", c.min_pts));

  c.drop_tol = t.get_double("noise.drop_tol", c.drop_tol);
  const std::string thr = t.get_string("noise.threshold", "row_mean");
  if (thr == "row_mean") c.alg1_threshold = Alg1Threshold::row_mean;
  else if (thr == "entry_mean") c.alg1_threshold = Alg1Threshold::entry_mean;
  else throw ConfigError("noise.threshold must be 'row_mean' or 'entry_mean'");
  for (double e : t.get_double_array("noise.eps_counts")) {
    if (e < 1.0 || e != std::floor(e)) throw ConfigError("noise.eps_counts must be positive integers");
    c.eps_counts.push_back(static_cast<std::uint32_t>(e));
  }

  c.eig_prefix = static_cast<int>(t.get_int("spectral.prefix", c.eig_prefix));
  c.normalized_laplacian = t.get_bool("spectral.normalized", c.normalized_laplacian);
  c.dense_threshold = static_cast<int>(t.get_int("spectral.dense_threshold", c.dense_threshold));
  c.kernel_ratio = t.get_double("spectral.kernel_ratio", c.kernel_ratio);

  const std::string alg = t.get_string("nmf.algorithm", "acls");
  if (alg == "mu") c.nmf.algorithm = NmfAlgorithm::mu;
  else if (alg == "als") c.nmf.algorithm = NmfAlgorithm::als;
  else if (alg == "acls") c.nmf.algorithm = NmfAlgorithm::acls;
  else throw ConfigError("nmf.algorithm must be 'mu', 'als' or 'acls'");
  if (t.has("nmf.k")) {
    const auto* kv = &t.values().at("nmf.k");
    if (kv->is_string()) {
      if (std::get<std::string>(kv->v) != "auto") throw ConfigError("nmf.k must be an integer or 'auto'");
      c.k = 0;
    } else if (kv->is_int()) {
      c.k = static_cast<int>(std::get<std::int64_t>(kv->v));
      if (c.k < 1) throw ConfigError("nmf.k must be >= 1");
    } else {
      throw ConfigError("nmf.k must be an integer or 'auto'");
    }
  }
  c.nmf.max_iter = static_cast<int>(t.get_int("nmf.max_iter", c.nmf.max_iter));
  c.nmf.lambda_w = t.get_double("nmf.lambda_w", c.nmf.lambda_w);
  c.nmf.lambda_h = t.get_double("nmf.lambda_h", c.nmf.lambda_h);
  c.nmf.denom_eps = t.get_double("nmf.denom_eps", c.nmf.denom_eps);
  c.nmf.early_stop = t.get_bool("nmf.early_stop", c.nmf.early_stop);
  c.top_terms = static_cast<int>(t.get_int("topics.top_terms", c.top_terms));

  c.edge_threshold = static_cast<int>(t.get_int("export.edge_threshold", c.edge_threshold));
  c.bipartite_cutoff = t.get_double("export.bipartite_cutoff", c.bipartite_cutoff);
  c.dump_consensus = t.get_bool("export.consensus_dump", c.dump_consensus);
  c.dump_factors = t.get_bool("export.factors_dump", c.dump_factors);

  c.seed = static_cast<std::uint64_t>(t.get_int("seed", static_cast<std::int64_t>(c.seed)));
  c.out_dir = t.get_string("out", c.out_dir);
  c.strict_repro = t.get_bool("strict_repro", c.strict_repro);
  return c;
}

PipelineConfig load_config_file(const std::string& path) {
  return config_from_toml(load_toml_file(path));
}

namespace {

std::string fmt_double(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string config_snapshot_toml(const PipelineConfig& c) {
  std::ostringstream o;
  o << "seed = " << c.seed << "\n";
  o << "out = \"" << c.out_dir << "\"\n";
  o << "strict_repro = " << (c.strict_repro ? "true" : "false") << "\n";
  o << "\n[input]\n";
  o << "path = \"" << c.input_path << "\"\n";
  o << "format = \"" << (c.input_format == InputFormat::lines ? "lines" : "tsv") << "\"\n";
  o << "\n[corpus]\n";
  o << "stoplists = [";
  for (std::size_t i = 0; i < c.stoplist_paths.size(); ++i)
    o << (i ? ", " : "") << '"' << c.stoplist_paths[i] << '"';
  o << "]\n";
  o << "stem = " << (c.stem ? "true" : "false") << "\n";
  o << "lowercase = " << (c.lowercase ? "true" : "false") << "\n";
  o << "strip_urls = " << (c.strip_urls ? "true" : "false") << "\n";
  o << "strip_mentions = " << (c.strip_mentions ? "true" : "false") << "\n";
  o << "\n[kmeans]\n";
  o << "k_min = " << c.sweep_k_min << "\n";
  o << "k_max = " << c.sweep_k_max << "\n";
  o << "repeats_per_k = " << c.repeats_per_k << "\n";
  o << "max_iter = " << c.kmeans.max_iter << "\n";
  o << "tol = " << fmt_double(c.kmeans.tol) << "\n";
  o << "init = \"" << (c.kmeans.init == KmeansInit::forgy ? "forgy" : "space") << "\"\n";
  o << "\n[dbscan]\n";
  o << "eps_quantiles = [";
  for (std::size_t i = 0; i < c.eps_quantiles.size(); ++i)
    o << (i ? ", " : "") << fmt_double(c.eps_quantiles[i]);
  o << "]\n";
  o << "quantile_lo = " << fmt_double(c.quantile_lo) << "\n";
  o << "quantile_hi = " << fmt_double(c.quantile_hi) << "\n";
  o << "quantile_count = " << c.quantile_count << "\n";
  o << "min_pts = " << c.min_pts << "\n";
  o << "\n[noise]\n";
  o << "drop_tol = " << fmt_double(c.drop_tol) << "\n";
  o << "threshold = \"" << (c.alg1_threshold == Alg1Threshold::row_mean ? "row_mean" : "entry_mean")
    << "\"\n";
  o << "eps_counts = [";
  for (std::size_t i = 0; i < c.eps_counts.size(); ++i) o << (i ? ", " : "") << c.eps_counts[i];
  o << "]\n";
  o << "\n[spectral]\n";
  o << "prefix = " << c.eig_prefix << "\n";
  o << "normalized = " << (c.normalized_laplacian ? "true" : "false") << "\n";
  o << "dense_threshold = " << c.dense_threshold << "\n";
  o << "kernel_ratio = " << fmt_double(c.kernel_ratio) << "\n";
  o << "\n[nmf]\n";
  o << "algorithm = \""
    << (c.nmf.algorithm == NmfAlgorithm::mu ? "mu"
                                            : c.nmf.algorithm == NmfAlgorithm::als ? "als" : "acls")
    << "\"\n";
  if (c.k == 0) o << "k = \"auto\"\n";
  else o << "k = " << c.k << "\n";
  o << "max_iter = " << c.nmf.max_iter << "\n";
  o << "lambda_w = " << fmt_double(c.nmf.lambda_w) << "\n";
  o << "lambda_h = " << fmt_double(c.nmf.lambda_h) << "\n";
  o << "denom_eps = " << fmt_double(c.nmf.denom_eps) << "\n";
  o << "early_stop = " << (c.nmf.early_stop ? "true" : "false") << "\n";
  o << "\n[topics]\n";
  o << "top_terms = " << c.top_terms << "\n";
  o << "\n[export]\n";
  o << "edge_threshold = " << c.edge_threshold << "\n";
  o << "bipartite_cutoff = " << fmt_double(c.bipartite_cutoff) << "\n";
  o << "consensus_dump = " << (c.dump_consensus ? "true" : "false") << "\n";
  o << "factors_dump = " << (c.dump_factors ? "true" : "false") << "\n";
  return o.str();
}

}  // namespace topicmine

#include "topicmine/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "topicmine/errors.hpp"
#include "topicmine/stemmer.hpp"

namespace topicmine {
namespace {

#include "stopwords_en.inc"
#include "stopwords_es.inc"

bool is_ascii_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool looks_like_url(std::string_view w) {
  if (w.size() >= 4) {
    std::string head(w.substr(0, std::min<std::size_t>(w.size(), 8)));
    for (auto& c : head) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (head.rfind("http", 0) == 0 || head.rfind("www.", 0) == 0) return true;
  }
  return w.find("://") != std::string_view::npos;
}

}  // namespace

void Stoplist::merge(const Stoplist& other) {
  terms.insert(other.terms.begin(), other.terms.end());
}

Stoplist Stoplist::parse(std::string_view text) {
  Stoplist sl;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t b = 0, e = line.size();
    while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    if (e > b) {
      std::string term(line.substr(b, e - b));
      for (auto& c : term)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      sl.terms.insert(std::move(term));
    }
  }
  return sl;
}

Stoplist Stoplist::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open stop list: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Stoplist Stoplist::builtin_english() { return parse(kStopwordsEn); }
Stoplist Stoplist::builtin_spanish() { return parse(kStopwordsEs); }

Stoplist Stoplist::builtin_default() {
  Stoplist sl = builtin_english();
  sl.merge(builtin_spanish());
  return sl;
}

std::vector<std::string> tokenize(std::string_view text, const Stoplist& stoplist,
                                  const TokenizeOptions& options) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    std::size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view word = text.substr(i, j - i);
    i = j;

    if (options.strip_mentions && !word.empty() && word.front() == '@') continue;
    if (options.strip_urls && looks_like_url(word)) continue;

    // Split the word on punctuation; '#' acts as a plain separator so the
    // hashtag body survives as a term. Multi-byte UTF-8 sequences are kept
    // inside tokens untouched.
    std::string token;
    auto flush = [&]() {
      if (token.empty()) return;
      std::string t = std::move(token);
      token.clear();
      if (stoplist.contains(t)) return;
      if (options.stem) t = porter_stem(t);
      if (!t.empty() && !stoplist.contains(t)) out.push_back(std::move(t));
    };
    for (unsigned char c : word) {
      if (c >= 0x80 || is_ascii_alnum(c)) {
        if (options.lowercase && c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
        token.push_back(static_cast<char>(c));
      } else {
        flush();
      }
    }
    flush();
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text, const Stoplist& stoplist, bool stem) {
  TokenizeOptions options;
  options.stem = stem;
  return tokenize(text, stoplist, options);
}

DedupResult remove_duplicates(const std::vector<Document>& corpus) {
  DedupResult res;
  std::unordered_set<std::string> seen;
  seen.reserve(corpus.size());
  for (const auto& doc : corpus) {
    std::vector<std::string> sorted = doc.tokens;
    std::sort(sorted.begin(), sorted.end());
    std::string key;
    for (const auto& t : sorted) {
      key += t;
      key += '\x1f';
    }
    if (seen.insert(std::move(key)).second) {
      res.kept.push_back(doc);
    } else {
      ++res.removed_count;
    }
  }
  return res;
}

TdmBuild build_tdm(const std::vector<Document>& corpus) {
  const int n = static_cast<int>(corpus.size());

  // First-occurrence term order over the corpus scan.
  Vocabulary full;
  std::vector<int> last_doc_seen;  // df bookkeeping: term -> last doc counted
  for (int d = 0; d < n; ++d) {
    for (const auto& t : corpus[static_cast<std::size_t>(d)].tokens) {
      auto it = full.index.find(t);
      if (it == full.index.end()) {
        const int row = static_cast<int>(full.terms.size());
        full.index.emplace(t, row);
        full.terms.push_back(t);
        full.doc_frequency.push_back(1);
        last_doc_seen.push_back(d);
      } else if (last_doc_seen[static_cast<std::size_t>(it->second)] != d) {
        ++full.doc_frequency[static_cast<std::size_t>(it->second)];
        last_doc_seen[static_cast<std::size_t>(it->second)] = d;
      }
    }
  }

  // Terms present in every document get idf = ln(1) = 0; drop them.
  Vocabulary vocab;
  std::vector<int> row_of_full(full.terms.size(), -1);
  for (std::size_t r = 0; r < full.terms.size(); ++r) {
    if (full.doc_frequency[r] >= n) continue;
    row_of_full[r] = vocab.size();
    vocab.index.emplace(full.terms[r], vocab.size());
    vocab.terms.push_back(full.terms[r]);
    vocab.doc_frequency.push_back(full.doc_frequency[r]);
  }
  if (vocab.terms.empty())
    throw AllDocumentsEmptyError("no terms survive TF-IDF weighting (every term occurs in every document)");

  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> norms(static_cast<std::size_t>(n), 0.0);
  std::unordered_map<int, int> tf;  // row -> count within one document
  for (int d = 0; d < n; ++d) {
    tf.clear();
    for (const auto& t : corpus[static_cast<std::size_t>(d)].tokens) {
      const int fr = full.index.at(t);
      const int r = row_of_full[static_cast<std::size_t>(fr)];
      if (r >= 0) ++tf[r];
    }
    double norm2 = 0.0;
    for (const auto& [r, count] : tf) {
      const double idf = std::log(static_cast<double>(n) /
                                  static_cast<double>(vocab.doc_frequency[static_cast<std::size_t>(r)]));
      const double w = static_cast<double>(count) * idf;
      norm2 += w * w;
    }
    const double norm = std::sqrt(norm2);
    norms[static_cast<std::size_t>(d)] = norm;
    if (norm <= 0.0) continue;
    // Deterministic triplet order: ascending row within the column.
    std::vector<std::pair<int, int>> entries(tf.begin(), tf.end());
    std::sort(entries.begin(), entries.end());
    for (const auto& [r, count] : entries) {
      const double idf = std::log(static_cast<double>(n) /
                                  static_cast<double>(vocab.doc_frequency[static_cast<std::size_t>(r)]));
      triplets.emplace_back(r, d, static_cast<double>(count) * idf / norm);
    }
  }
  if (triplets.empty())
    throw AllDocumentsEmptyError("term-document matrix has no nonzero entries");

  TdmBuild out;
  out.tdm.A.resize(vocab.size(), n);
  out.tdm.A.setFromTriplets(triplets.begin(), triplets.end());
  out.tdm.A.makeCompressed();
  out.tdm.column_norms = std::move(norms);
  out.vocab = std::move(vocab);
  return out;
}

}  // namespace topicmine

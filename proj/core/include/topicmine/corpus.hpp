#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <Eigen/SparseCore>

namespace topicmine {

struct Document {
  int id = 0;                       // 0-based position in the input
  std::string raw;                  // original text
  std::vector<std::string> tokens;  // normalized terms, input order
  std::string external_id;          // optional id column from TSV input
};

struct Stoplist {
  std::unordered_set<std::string> terms;

  bool contains(const std::string& t) const { return terms.count(t) != 0; }
  void merge(const Stoplist& other);

  // One term per line; '#' starts a comment, blank lines ignored.
  static Stoplist load_file(const std::string& path);
  static Stoplist parse(std::string_view text);
  static Stoplist builtin_english();
  static Stoplist builtin_spanish();
  static Stoplist builtin_default();  // english + spanish
};

// Lowercases, strips URLs, @-mentions and punctuation (hashtag words are
// kept without the '#'), drops stop-list terms, then stems. Order of the
// surviving terms is preserved. Empty output is fine.
std::vector<std::string> tokenize(std::string_view text, const Stoplist& stoplist, bool stem);

struct TokenizeOptions {
  bool lowercase = true;
  bool strip_urls = true;
  bool strip_mentions = true;
  bool stem = true;
};

std::vector<std::string> tokenize(std::string_view text, const Stoplist& stoplist,
                                  const TokenizeOptions& options);

struct DedupResult {
  std::vector<Document> kept;  // input order, earliest id per duplicate group
  int removed_count = 0;
};

// Documents with identical token multisets collapse to the earliest one.
DedupResult remove_duplicates(const std::vector<Document>& corpus);

struct Vocabulary {
  std::vector<std::string> terms;         // first-occurrence order, retained terms only
  std::vector<int> doc_frequency;         // parallel to terms
  std::unordered_map<std::string, int> index;

  int size() const { return static_cast<int>(terms.size()); }
};

struct TermDocMatrix {
  // Column d holds document d's TF-IDF vector, scaled to unit Euclidean
  // norm. Terms occurring in every document carry zero weight and are not
  // represented at all.
  Eigen::SparseMatrix<double> A;     // m x n, column-major
  std::vector<double> column_norms;  // pre-normalization norm per column (0 if empty)

  int term_count() const { return static_cast<int>(A.rows()); }
  int doc_count() const { return static_cast<int>(A.cols()); }
};

struct TdmBuild {
  TermDocMatrix tdm;
  Vocabulary vocab;
};

// entry(t,d) = tf(t,d) * ln(n / df(t)), each nonempty column then scaled to
// unit norm. Throws AllDocumentsEmptyError when nothing survives.
TdmBuild build_tdm(const std::vector<Document>& corpus);

}  // namespace topicmine

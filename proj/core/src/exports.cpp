#include "topicmine/exports.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include "topicmine/errors.hpp"

namespace topicmine {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  return out;
}

std::string fmt_weight(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // Control characters are not representable in XML 1.0; drop them.
        if (c < 0x20 && c != '\t' && c != '\n' && c != '\r') break;
        out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

void export_gexf_consensus(const ConsensusMatrix& C, const ClusterAssignment& labels,
                           const std::vector<Document>& docs, int threshold,
                           const std::string& path) {
  const int n = C.size();
  if (static_cast<int>(labels.labels.size()) != n || static_cast<int>(docs.size()) != n)
    throw LengthMismatchError("export_gexf_consensus: sizes disagree");
  auto out = open_out(path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
  out << "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n";
  out << "    <attributes class=\"node\">\n";
  out << "      <attribute id=\"0\" title=\"cluster\" type=\"integer\"/>\n";
  out << "    </attributes>\n";
  out << "    <nodes>\n";
  for (int i = 0; i < n; ++i) {
    out << "      <node id=\"d" << docs[static_cast<std::size_t>(i)].id << "\" label=\""
        << xml_escape(docs[static_cast<std::size_t>(i)].raw) << "\">\n";
    out << "        <attvalues><attvalue for=\"0\" value=\""
        << labels.labels[static_cast<std::size_t>(i)] << "\"/></attvalues>\n";
    out << "      </node>\n";
  }
  out << "    </nodes>\n";
  out << "    <edges>\n";
  long edge_id = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto c = C.count(i, j);
      if (static_cast<long>(c) > threshold) {
        out << "      <edge id=\"" << edge_id++ << "\" source=\"d"
            << docs[static_cast<std::size_t>(i)].id << "\" target=\"d"
            << docs[static_cast<std::size_t>(j)].id << "\" weight=\"" << c << "\"/>\n";
      }
    }
  out << "    </edges>\n";
  out << "  </graph>\n";
  out << "</gexf>\n";
  if (!out) throw IoError("write failed: " + path);
}

void export_gexf_bipartite(const Eigen::MatrixXd& H, const std::vector<int>& assignment,
                           const std::vector<Document>& docs, double cutoff,
                           const std::string& path) {
  const int k = static_cast<int>(H.rows());
  const int n = static_cast<int>(H.cols());
  if (static_cast<int>(assignment.size()) != n || static_cast<int>(docs.size()) != n)
    throw LengthMismatchError("export_gexf_bipartite: sizes disagree");
  auto out = open_out(path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
  out << "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n";
  out << "    <attributes class=\"node\">\n";
  out << "      <attribute id=\"0\" title=\"kind\" type=\"string\"/>\n";
  out << "      <attribute id=\"1\" title=\"topic\" type=\"integer\"/>\n";
  out << "    </attributes>\n";
  out << "    <nodes>\n";
  for (int t = 0; t < k; ++t) {
    out << "      <node id=\"t" << t << "\" label=\"topic " << t << "\">\n";
    out << "        <attvalues><attvalue for=\"0\" value=\"topic\"/>"
        << "<attvalue for=\"1\" value=\"" << t << "\"/></attvalues>\n";
    out << "      </node>\n";
  }
  for (int j = 0; j < n; ++j) {
    out << "      <node id=\"d" << docs[static_cast<std::size_t>(j)].id << "\" label=\""
        << xml_escape(docs[static_cast<std::size_t>(j)].raw) << "\">\n";
    out << "        <attvalues><attvalue for=\"0\" value=\"document\"/>"
        << "<attvalue for=\"1\" value=\"" << assignment[static_cast<std::size_t>(j)]
        << "\"/></attvalues>\n";
    out << "      </node>\n";
  }
  out << "    </nodes>\n";
  out << "    <edges>\n";
  long edge_id = 0;
  for (int j = 0; j < n; ++j) {
    const double mx = H.col(j).maxCoeff();
    if (mx <= 0.0) continue;
    for (int t = 0; t < k; ++t) {
      const double h = H(t, j);
      if (h > 0.0 && h / mx >= cutoff) {
        out << "      <edge id=\"" << edge_id++ << "\" source=\"d"
            << docs[static_cast<std::size_t>(j)].id << "\" target=\"t" << t << "\" weight=\""
            << fmt_weight(h) << "\"/>\n";
      }
    }
  }
  out << "    </edges>\n";
  out << "  </graph>\n";
  out << "</gexf>\n";
  if (!out) throw IoError("write failed: " + path);
}

std::vector<std::string> export_wordcounts(const std::vector<Document>& docs,
                                           const std::vector<int>& group_of_doc, int group_count,
                                           const std::string& path_prefix) {
  if (docs.size() != group_of_doc.size())
    throw LengthMismatchError("export_wordcounts: sizes disagree");
  std::vector<std::string> written;
  for (int g = 0; g < group_count; ++g) {
    std::map<std::string, long> counts;
    for (std::size_t d = 0; d < docs.size(); ++d) {
      if (group_of_doc[d] != g) continue;
      for (const auto& tok : docs[d].tokens) ++counts[tok];
    }
    std::vector<std::pair<std::string, long>> rows(counts.begin(), counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    const std::string path = path_prefix + std::to_string(g) + ".tsv";
    auto out = open_out(path);
    out << "term\tcount\n";
    for (const auto& [term, count] : rows) out << term << '\t' << count << '\n';
    if (!out) throw IoError("write failed: " + path);
    written.push_back(path);
  }
  return written;
}

void export_topics_tsv(const std::vector<TopicSummary>& summaries, const std::string& path) {
  auto out = open_out(path);
  out << "topic_id\trank\tterm\tweight\n";
  for (const auto& s : summaries) {
    int rank = 1;
    for (const auto& [term, weight] : s.top_terms)
      out << s.topic_id << '\t' << rank++ << '\t' << term << '\t' << fmt_weight(weight) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void export_members_tsv(const std::vector<TopicSummary>& summaries,
                        const std::vector<Document>& docs, const std::string& path) {
  auto out = open_out(path);
  out << "topic_id\tdoc_id\tis_sentence\n";
  for (const auto& s : summaries)
    for (int member : s.member_docs)
      out << s.topic_id << '\t' << docs[static_cast<std::size_t>(member)].id << '\t'
          << (member == s.topic_sentence ? 1 : 0) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

void export_eigenvalues_tsv(const std::vector<double>& eigenvalues, const std::string& path) {
  auto out = open_out(path);
  out << "index\teigenvalue\tgap\n";
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    out << (i + 1) << '\t' << fmt_weight(eigenvalues[i]) << '\t';
    if (i + 1 < eigenvalues.size()) out << fmt_weight(eigenvalues[i + 1] - eigenvalues[i]);
    else out << 0;
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void export_consensus_tsv(const ConsensusMatrix& C, std::uint32_t min_count,
                          const std::string& path) {
  auto out = open_out(path);
  out << "i\tj\tcount\n";
  for (int i = 0; i < C.size(); ++i)
    for (int j = i + 1; j < C.size(); ++j) {
      const auto c = C.count(i, j);
      if (c >= min_count && c > 0) out << i << '\t' << j << '\t' << c << '\n';
    }
  if (!out) throw IoError("write failed: " + path);
}

void export_factors_tsv(const Eigen::MatrixXd& M, const std::string& path) {
  auto out = open_out(path);
  for (Eigen::Index j = 0; j < M.cols(); ++j) out << (j ? "\t" : "") << "topic_" << j;
  out << '\n';
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) out << (j ? "\t" : "") << fmt_weight(M(i, j));
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace topicmine

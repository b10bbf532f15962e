#include "topicmine/topics.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "topicmine/errors.hpp"

namespace topicmine {

ClusterAssignment cluster_consensus(const ConsensusMatrix& C, int k, std::uint64_t seed,
                                    const KmeansOptions& options) {
  const int n = C.size();
  if (k < 1 || k > n)
    throw BadKError("cluster_consensus: k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");

  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = static_cast<double>(C.count(i, j));
      rows(i, j) = v;
      rows(j, i) = v;
    }

  std::vector<int> active, residual;
  for (int i = 0; i < n; ++i) {
    if (rows.row(i).norm() > 0.0) active.push_back(i);
    else residual.push_back(i);
  }
  if (active.empty()) throw ZeroVectorError("cluster_consensus: every row of C is zero");
  if (k > static_cast<int>(active.size()))
    throw BadKError("cluster_consensus: k exceeds the number of nonzero rows");

  Eigen::MatrixXd sub(static_cast<Eigen::Index>(active.size()), n);
  for (std::size_t i = 0; i < active.size(); ++i) sub.row(static_cast<Eigen::Index>(i)) = rows.row(active[i]);
  DenseRowsView view(sub);
  ClusterAssignment inner = kmeans(view, k, seed, options);

  if (residual.empty()) {
    ClusterAssignment out = inner;
    out.labels.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < active.size(); ++i)
      out.labels[static_cast<std::size_t>(active[i])] = inner.labels[i];
    return out;
  }

  ClusterAssignment out;
  out.k = k + 1;  // extra residual cluster holds the isolated points
  out.objective = inner.objective;
  out.objective_history = inner.objective_history;
  out.iterations = inner.iterations;
  out.labels.assign(static_cast<std::size_t>(n), k);
  for (std::size_t i = 0; i < active.size(); ++i)
    out.labels[static_cast<std::size_t>(active[i])] = inner.labels[i];
  return out;
}

std::vector<std::pair<std::string, double>> top_terms(const Eigen::MatrixXd& W,
                                                      const Vocabulary& vocab, int topic, int t) {
  const int m = static_cast<int>(W.rows());
  if (topic < 0 || topic >= W.cols()) throw Error("top_terms: topic index out of range");
  if (t < 1 || t > m) throw Error("top_terms: t outside [1, m]");
  if (m != vocab.size()) throw ShapeMismatchError("top_terms: W rows do not match vocabulary");

  std::vector<int> order(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double wa = W(a, topic), wb = W(b, topic);
    if (wa != wb) return wa > wb;
    return a < b;
  });
  std::vector<std::pair<std::string, double>> out;
  out.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i)
    out.emplace_back(vocab.terms[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])],
                     W(order[static_cast<std::size_t>(i)], topic));
  return out;
}

std::vector<int> assign_topics(const Eigen::MatrixXd& H) {
  const int k = static_cast<int>(H.rows());
  const int n = static_cast<int>(H.cols());
  std::vector<int> out(static_cast<std::size_t>(n), -1);
  for (int j = 0; j < n; ++j) {
    int best = -1;
    double bv = 0.0;
    for (int i = 0; i < k; ++i) {
      if (H(i, j) > bv) {
        bv = H(i, j);
        best = i;
      }
    }
    out[static_cast<std::size_t>(j)] = best;  // stays -1 for an all-zero column
  }
  return out;
}

int topic_sentence(const std::vector<Document>& docs,
                   const std::vector<std::string>& topic_terms, const Eigen::MatrixXd& H,
                   int topic, const std::vector<int>& assignment) {
  std::unordered_set<std::string> terms(topic_terms.begin(), topic_terms.end());
  int best = -1;
  int best_count = -1;
  double best_h = 0.0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (assignment[d] != topic) continue;
    std::unordered_set<std::string> seen;
    int count = 0;
    for (const auto& tok : docs[d].tokens)
      if (terms.count(tok) && seen.insert(tok).second) ++count;
    const double h = H(topic, static_cast<Eigen::Index>(d));
    if (count > best_count || (count == best_count && h > best_h)) {
      best = static_cast<int>(d);
      best_count = count;
      best_h = h;
    }
  }
  if (best < 0) throw EmptyTopicError("topic_sentence: topic " + std::to_string(topic) + " has no documents");
  return best;
}

std::vector<TopicSummary> summarize(const std::vector<Document>& docs, const Eigen::MatrixXd& W,
                                    const Eigen::MatrixXd& H, const Vocabulary& vocab, int t) {
  if (W.cols() != H.rows()) throw ShapeMismatchError("summarize: W and H disagree on k");
  if (static_cast<std::size_t>(H.cols()) != docs.size())
    throw ShapeMismatchError("summarize: H columns do not match document count");
  const int k = static_cast<int>(W.cols());
  const std::vector<int> assignment = assign_topics(H);
  const int tt = std::min<int>(t, static_cast<int>(W.rows()));

  std::vector<TopicSummary> out(static_cast<std::size_t>(k));
  for (int topic = 0; topic < k; ++topic) {
    auto& s = out[static_cast<std::size_t>(topic)];
    s.topic_id = topic;
    s.top_terms = top_terms(W, vocab, topic, tt);
    for (std::size_t d = 0; d < docs.size(); ++d)
      if (assignment[d] == topic) s.member_docs.push_back(static_cast<int>(d));
    if (!s.member_docs.empty()) {
      std::vector<std::string> names;
      names.reserve(s.top_terms.size());
      for (const auto& [term, weight] : s.top_terms) names.push_back(term);
      s.topic_sentence = topic_sentence(docs, names, H, topic, assignment);
    }
  }
  return out;
}

}  // namespace topicmine

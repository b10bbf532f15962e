#include <doctest.h>

#include <random>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "topicmine/corpus.hpp"
#include "topicmine/errors.hpp"
#include "topicmine/topics.hpp"

using namespace topicmine;

namespace {

Vocabulary make_vocab(const std::vector<std::string>& terms) {
  Vocabulary v;
  for (const auto& t : terms) {
    v.index.emplace(t, v.size());
    v.terms.push_back(t);
    v.doc_frequency.push_back(1);
  }
  return v;
}

}  // namespace

TEST_CASE("top_terms ordering and ties") {
  const auto vocab = make_vocab({"alpha", "beta", "gamma", "delta"});
  Eigen::MatrixXd W(4, 2);
  W << 0.1, 0.0,
       0.9, 0.0,
       0.1, 0.7,
       0.9, 0.0;

  SUBCASE("single nonzero entry comes first") {
    const auto top = top_terms(W, vocab, 1, 1);
    REQUIRE(top.size() == 1);
    CHECK(top[0].first == "gamma");
  }
  SUBCASE("ties break by vocabulary order") {
    const auto top = top_terms(W, vocab, 0, 4);
    CHECK(top[0].first == "beta");   // 0.9, row 1
    CHECK(top[1].first == "delta");  // 0.9, row 3
    CHECK(top[2].first == "alpha");  // 0.1, row 0
    CHECK(top[3].first == "gamma");
  }
  SUBCASE("prefix property") {
    const auto t2 = top_terms(W, vocab, 0, 2);
    const auto t3 = top_terms(W, vocab, 0, 3);
    for (std::size_t i = 0; i < t2.size(); ++i) CHECK(t2[i].first == t3[i].first);
  }
}

TEST_CASE("assign_topics") {
  Eigen::MatrixXd H(2, 3);
  H << 0.9, 0.0, 0.5,
       0.1, 0.0, 0.5;
  const auto a = assign_topics(H);
  CHECK(a == std::vector<int>{0, -1, 0});  // tie goes to the lower topic id

  SUBCASE("invariant under positive column rescaling") {
    Eigen::MatrixXd H2 = H;
    H2.col(0) *= 37.5;
    H2.col(2) *= 0.01;
    CHECK(assign_topics(H2) == a);
  }
}

TEST_CASE("topic_sentence picks the best-covered document") {
  std::vector<Document> docs(3);
  docs[0].tokens = {"goal", "match", "fifa"};
  docs[1].tokens = {"goal", "match", "fifa", "stadium"};
  docs[2].tokens = {"goal", "goal", "goal"};
  Eigen::MatrixXd H(1, 3);
  H << 0.5, 0.4, 0.9;
  const std::vector<int> assignment{0, 0, 0};
  const std::vector<std::string> terms{"goal", "match", "fifa", "stadium"};

  CHECK(topic_sentence(docs, terms, H, 0, assignment) == 1);

  SUBCASE("repetition does not help") {
    // doc 2 repeats one term three times but covers only one distinct term
    const std::vector<std::string> single{"goal"};
    // all three docs cover "goal" once; tie broken by H: doc 2 wins
    CHECK(topic_sentence(docs, single, H, 0, assignment) == 2);
  }
  SUBCASE("H breaks coverage ties") {
    std::vector<Document> d2(2);
    d2[0].tokens = {"goal", "match"};
    d2[1].tokens = {"goal", "match"};
    Eigen::MatrixXd h2(1, 2);
    h2 << 0.3, 0.8;
    CHECK(topic_sentence(d2, {"goal", "match"}, h2, 0, {0, 0}) == 1);
  }
  SUBCASE("empty topic throws") {
    CHECK_THROWS_AS(topic_sentence(docs, terms, H, 0, {-1, -1, -1}), EmptyTopicError);
  }
}

TEST_CASE("summarize") {
  // two planted topics with disjoint vocabulary
  std::vector<Document> docs(4);
  docs[0].tokens = {"goal", "match"};
  docs[1].tokens = {"goal", "fifa"};
  docs[2].tokens = {"samba", "brazil"};
  docs[3].tokens = {"samba", "rio"};
  const auto vocab = make_vocab({"goal", "match", "fifa", "samba", "brazil", "rio"});
  Eigen::MatrixXd W(6, 2);
  W << 0.9, 0.0,
       0.4, 0.0,
       0.4, 0.0,
       0.0, 0.9,
       0.0, 0.4,
       0.0, 0.4;
  Eigen::MatrixXd H(2, 4);
  H << 0.8, 0.7, 0.0, 0.0,
       0.0, 0.0, 0.8, 0.7;

  const auto sums = summarize(docs, W, H, vocab, 3);
  REQUIRE(sums.size() == 2);
  CHECK(sums[0].member_docs == std::vector<int>{0, 1});
  CHECK(sums[1].member_docs == std::vector<int>{2, 3});
  CHECK(sums[0].top_terms[0].first == "goal");
  CHECK(sums[1].top_terms[0].first == "samba");
  CHECK(sums[0].topic_sentence >= 0);
  CHECK(sums[1].topic_sentence >= 0);

  SUBCASE("every document lands in exactly one summary") {
    std::vector<int> seen(4, 0);
    for (const auto& s : sums)
      for (int d : s.member_docs) ++seen[static_cast<std::size_t>(d)];
    for (int c : seen) CHECK(c == 1);
  }
  SUBCASE("empty topic produces an empty summary") {
    Eigen::MatrixXd H2 = H;
    H2.row(1).setZero();  // topic 1 loses all documents
    const auto s2 = summarize(docs, W, H2, vocab, 3);
    CHECK(s2[1].member_docs.empty());
    CHECK(s2[1].topic_sentence == -1);
    CHECK_FALSE(s2[1].top_terms.empty());
  }
  SUBCASE("k = 1 collects every document") {
    Eigen::MatrixXd W1 = W.leftCols(1);
    Eigen::MatrixXd H1(1, 4);
    H1 << 0.5, 0.5, 0.5, 0.5;
    const auto s1 = summarize(docs, W1, H1, vocab, 2);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].member_docs.size() == 4);
  }
}

TEST_CASE("cluster_consensus recovers blocks") {
  const auto C = gen::block_consensus(3, 8, 10, 0.0, 2);
  const auto a = cluster_consensus(C, 3, 99);
  CHECK(a.k == 3);
  std::vector<int> truth(24);
  for (int i = 0; i < 24; ++i) truth[static_cast<std::size_t>(i)] = i / 8;
  CHECK(oracle::adjusted_rand_index(truth, a.labels) == doctest::Approx(1.0));
}

TEST_CASE("cluster_consensus handles k = 1 and zero rows") {
  SUBCASE("k = 1") {
    const auto C = gen::block_consensus(2, 5, 6, 0.0, 3);
    const auto a = cluster_consensus(C, 1, 5);
    CHECK(a.k == 1);
    for (int l : a.labels) CHECK(l == 0);
  }
  SUBCASE("zero rows go to a residual cluster") {
    ConsensusMatrix C(6, 8);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) C.set(i, j, 8);
    // points 4 and 5 never co-cluster with anyone
    const auto a = cluster_consensus(C, 2, 5);
    CHECK(a.k == 3);  // 2 requested + residual
    CHECK(a.labels[4] == 2);
    CHECK(a.labels[5] == 2);
    CHECK(a.labels[0] < 2);
  }
  SUBCASE("bad k") {
    const auto C = gen::block_consensus(2, 5, 6, 0.0, 3);
    CHECK_THROWS_AS(cluster_consensus(C, 0, 1), BadKError);
    CHECK_THROWS_AS(cluster_consensus(C, 11, 1), BadKError);
  }
}

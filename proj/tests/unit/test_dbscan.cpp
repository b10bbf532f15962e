#include <doctest.h>

#include <random>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "topicmine/dbscan.hpp"

using namespace topicmine;

TEST_CASE("dbscan_classify basics") {
  SUBCASE("isolated point is noise") {
    DistanceMatrix D(3);
    D.set(0, 1, 1.0);
    D.set(0, 2, 1.0);
    D.set(1, 2, 0.1);
    const auto cls = dbscan_classify(D, {0.5, 2});
    CHECK(cls[0] == PointClass::noise);
    CHECK(cls[1] == PointClass::dense);
    CHECK(cls[2] == PointClass::dense);
  }
  SUBCASE("all mutually close means all dense") {
    DistanceMatrix D(5);
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) D.set(i, j, 0.1);
    for (auto c : dbscan_classify(D, {0.2, 5})) CHECK(c == PointClass::dense);
  }
  SUBCASE("min_pts 1 makes every point dense") {
    DistanceMatrix D(3);
    D.set(0, 1, 0.9);
    D.set(0, 2, 0.9);
    D.set(1, 2, 0.9);
    for (auto c : dbscan_classify(D, {0.1, 1})) CHECK(c == PointClass::dense);
  }
  SUBCASE("border point") {
    // 0-1-2 tight triple, 3 hangs off 2, c = 3
    DistanceMatrix D(4);
    D.set(0, 1, 0.1);
    D.set(0, 2, 0.1);
    D.set(1, 2, 0.1);
    D.set(0, 3, 0.9);
    D.set(1, 3, 0.9);
    D.set(2, 3, 0.2);
    const auto cls = dbscan_classify(D, {0.3, 3});
    CHECK(cls[2] == PointClass::dense);
    CHECK(cls[3] == PointClass::border);
  }
}

TEST_CASE("dbscan two-cluster toy set matches the oracle") {
  // two tight groups of five, far apart
  DistanceMatrix D(10);
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j) {
      const bool same = (i < 5) == (j < 5);
      D.set(i, j, same ? 0.1 : 0.95);
    }
  const DbscanParams p{0.3, 3};
  CHECK(dbscan_classify(D, p) == oracle::dbscan_classify(D, p.eps, p.min_pts));
  const auto labels = dbscan_cluster(D, p);
  CHECK(labels == oracle::dbscan_cluster(D, p.eps, p.min_pts));
  CHECK(labels[0] == 0);
  CHECK(labels[9] == 1);
}

TEST_CASE("dbscan_cluster chain reachability") {
  // chain 0-1-2-3-4, adjacent distance 0.2, otherwise far
  DistanceMatrix D(5);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) D.set(i, j, j - i == 1 ? 0.2 : 0.9);
  const auto labels = dbscan_cluster(D, {0.25, 2});
  for (int l : labels) CHECK(l == 0);
}

TEST_CASE("dbscan all-noise input yields no clusters") {
  DistanceMatrix D(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) D.set(i, j, 1.0);
  const auto labels = dbscan_cluster(D, {0.5, 2});
  for (int l : labels) CHECK(l == -1);
}

TEST_CASE("dbscan agrees with brute force on exhaustive small instances") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const auto D = gen::random_distances(n, rng());
    const double eps = 0.05 + static_cast<double>(rng() % 90) / 100.0;
    const int c = 1 + static_cast<int>(rng() % (n + 1));
    const DbscanParams p{eps, c};
    REQUIRE(dbscan_classify(D, p) == oracle::dbscan_classify(D, eps, c));
    REQUIRE(dbscan_cluster(D, p) == oracle::dbscan_cluster(D, eps, c));
  }
}

TEST_CASE("dense set grows monotonically with eps") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 10);
    const auto D = gen::random_distances(n, rng());
    const int c = 2 + static_cast<int>(rng() % 3);
    std::vector<double> eps_list{0.1, 0.3, 0.5, 0.7, 0.9};
    const auto table = classify_over_eps(D, eps_list, c);
    for (std::size_t run = 1; run < table.size(); ++run)
      for (int i = 0; i < n; ++i)
        if (table[run - 1][static_cast<std::size_t>(i)] == PointClass::dense)
          CHECK(table[run][static_cast<std::size_t>(i)] == PointClass::dense);
  }
}

TEST_CASE("classify_over_eps columns equal single runs") {
  const auto D = gen::random_distances(8, 5);
  const std::vector<double> eps_list{0.2, 0.6};
  const auto table = classify_over_eps(D, eps_list, 3);
  REQUIRE(table.size() == 2);
  CHECK(table[0] == dbscan_classify(D, {0.2, 3}));
  CHECK(table[1] == dbscan_classify(D, {0.6, 3}));

  // eps beyond the largest distance makes everything dense
  const auto all = classify_over_eps(D, {1.5}, 3);
  for (auto c : all[0]) CHECK(c == PointClass::dense);
}

TEST_CASE("vote_noise strict majority") {
  using PC = PointClass;
  SUBCASE("dense everywhere keeps the point") {
    ClassificationTable t{{PC::dense}, {PC::dense}, {PC::dense}};
    CHECK(vote_noise(t) == std::vector<bool>{false});
  }
  SUBCASE("border in 3 of 5 runs is noise") {
    ClassificationTable t{{PC::border}, {PC::border}, {PC::border}, {PC::dense}, {PC::dense}};
    CHECK(vote_noise(t) == std::vector<bool>{true});
  }
  SUBCASE("border in exactly half the runs keeps the point") {
    ClassificationTable t{{PC::border}, {PC::noise}, {PC::dense}, {PC::dense}};
    CHECK(vote_noise(t) == std::vector<bool>{false});
  }
}

TEST_CASE("dbscan over consensus counts") {
  // two blocks fully co-clustered, one bridge point half-committed to each
  ConsensusMatrix C(21, 10);
  auto block = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i)
      for (int j = i + 1; j < hi; ++j) C.set(i, j, 10);
  };
  block(0, 10);
  block(10, 20);
  for (int i = 0; i < 10; ++i) C.set(i, 20, 5);
  for (int i = 10; i < 20; ++i) C.set(i, 20, 5);

  SUBCASE("full-count threshold keeps blocks dense") {
    const auto cls = dbscan_classify_counts(C, 10, 5);
    for (int i = 0; i < 20; ++i) CHECK(cls[static_cast<std::size_t>(i)] == PointClass::dense);
    CHECK(cls[20] == PointClass::noise);
  }
  SUBCASE("low threshold includes the bridge") {
    const auto cls = dbscan_classify_counts(C, 3, 5);
    CHECK(cls[20] == PointClass::dense);
  }
  SUBCASE("clusters under count semantics") {
    const auto labels = dbscan_cluster_counts(C, 10, 5);
    CHECK(labels[0] == 0);
    CHECK(labels[10] == 1);
    CHECK(labels[20] == -1);
  }
}

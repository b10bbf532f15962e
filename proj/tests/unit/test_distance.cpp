#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/generators.hpp"
#include "topicmine/distance.hpp"
#include "topicmine/errors.hpp"

using namespace topicmine;

namespace {

Eigen::SparseVector<double> sparse_vec(const std::vector<double>& dense) {
  Eigen::SparseVector<double> v(static_cast<int>(dense.size()));
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0.0) v.insert(static_cast<int>(i)) = dense[i];
  return v;
}

}  // namespace

TEST_CASE("cosine similarity") {
  CHECK(cosine_similarity(sparse_vec({1, 2, 3}), sparse_vec({1, 2, 3})) == doctest::Approx(1.0));
  CHECK(cosine_similarity(sparse_vec({1, 0}), sparse_vec({0, 1})) == doctest::Approx(0.0));
  CHECK(cosine_similarity(sparse_vec({1, 1, 0}), sparse_vec({1, 0, 0})) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(cosine_similarity(sparse_vec({0, 0}), sparse_vec({1, 0})), ZeroVectorError);
}

TEST_CASE("cosine similarity is scale invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(6), y(6);
    for (int i = 0; i < 6; ++i) {
      x(i) = static_cast<double>(rng() % 100) / 10.0;
      y(i) = static_cast<double>(rng() % 100) / 10.0;
    }
    x(0) += 0.1;  // keep nonzero
    y(1) += 0.1;
    const double alpha = 0.001 + static_cast<double>(rng() % 1000);
    CHECK(cosine_similarity(x, Eigen::VectorXd(alpha * x)) == doctest::Approx(1.0));
    CHECK(cosine_similarity(x, y) ==
          doctest::Approx(cosine_similarity(x, Eigen::VectorXd(alpha * y))).epsilon(1e-12));
  }
}

TEST_CASE("pairwise cosine distance") {
  SUBCASE("identical and disjoint columns") {
    Eigen::SparseMatrix<double> A(4, 3);
    std::vector<Eigen::Triplet<double>> t{{0, 0, 1.0}, {1, 0, 2.0},
                                          {0, 1, 2.0}, {1, 1, 4.0},
                                          {2, 2, 5.0}};
    A.setFromTriplets(t.begin(), t.end());
    const auto D = pairwise_cosine_distance(A);
    CHECK(D(0, 1) == doctest::Approx(0.0));
    CHECK(D(0, 2) == doctest::Approx(1.0));
    CHECK(D(1, 2) == doctest::Approx(1.0));
    CHECK(D(0, 0) == 0.0);
    CHECK(D(1, 0) == D(0, 1));
  }
  SUBCASE("zero column reports its index") {
    Eigen::SparseMatrix<double> A(2, 2);
    std::vector<Eigen::Triplet<double>> t{{0, 0, 1.0}};
    A.setFromTriplets(t.begin(), t.end());
    CHECK_THROWS_WITH_AS(pairwise_cosine_distance(A),
                         "pairwise_cosine_distance: column 1 is all zeros", ZeroVectorError);
  }
  SUBCASE("matches scalar brute force on random matrices") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      const auto A = gen::random_sparse(6, 5, 0.6, seed);
      const auto D = pairwise_cosine_distance(A);
      const Eigen::MatrixXd dense(A);
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
          double dot = 0, ni = 0, nj = 0;
          for (int r = 0; r < 6; ++r) {
            dot += dense(r, i) * dense(r, j);
            ni += dense(r, i) * dense(r, i);
            nj += dense(r, j) * dense(r, j);
          }
          const double expect = i == j ? 0.0 : 1.0 - dot / std::sqrt(ni * nj);
          CHECK(D(i, j) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
  }
  SUBCASE("entries stay in [0,1]") {
    const auto A = gen::random_sparse(8, 10, 0.5, 99);
    const auto D = pairwise_cosine_distance(A);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        CHECK(D(i, j) >= 0.0);
        CHECK(D(i, j) <= 1.0);
      }
  }
}

TEST_CASE("distance quantiles") {
  DistanceMatrix D(4);
  D.set(0, 1, 0.1);
  D.set(0, 2, 0.2);
  D.set(0, 3, 0.3);
  D.set(1, 2, 0.4);
  D.set(1, 3, 0.5);
  D.set(2, 3, 0.6);
  const auto qs = distance_quantiles(D, 0.0, 1.0, 6);
  CHECK(qs == std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  const auto single = distance_quantiles(D, {0.5});
  CHECK(single.size() == 1);
  CHECK(single[0] >= 0.3);
  CHECK(single[0] <= 0.4);
}

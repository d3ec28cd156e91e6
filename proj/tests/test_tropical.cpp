#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "maxahp/tropical.hpp"
#include "oracles.hpp"

using namespace maxahp;

namespace {

const MaxMatrix kCost{{1, 3, 7, 9}, {1. / 3, 1, 6, 7}, {1. / 7, 1. / 6, 1, 3}, {1. / 9, 1. / 7, 1. / 3, 1}};

void expect_matrix_near(const MaxMatrix& a, const oracle::Dense& b, double rel) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_TRUE(oracle::close(a(i, j), b[i][j], rel)) << i << "," << j;
}

}  // namespace

TEST(MaxMatrixTest, RejectsBadShapesAndEntries) {
  EXPECT_THROW(MaxMatrix(0), Error);
  EXPECT_THROW((MaxMatrix{{1, 2}, {3}}), Error);
  EXPECT_THROW(MaxMatrix::from_rows({{1, -1}, {1, 1}}), Error);
  EXPECT_THROW(MaxMatrix(2, std::nan("")), Error);
  try {
    MaxMatrix::from_rows({{1, 2}, {3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(MaxMatrixTest, PositiveVectorRejectsZero) {
  EXPECT_THROW(PositiveVector({1.0, 0.0}), Error);
  EXPECT_THROW(PositiveVector({}), Error);
  const PositiveVector v({2.0, 4.0});
  EXPECT_DOUBLE_EQ(v.normalized_at(0)[1], 2.0);
}

TEST(TropicalTest, MatvecAgainstLoops) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto a = oracle::random_nonnegative(rng, 5, 0.3);
    const auto x = oracle::random_positive(rng, 5);
    const auto y = max_matvec(a, x);
    const auto want = oracle::matvec(oracle::dense(a), x);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(y[i], want[i]);
  }
}

TEST(TropicalTest, MatmulAgainstLoopsAndAssociative) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    const auto a = oracle::random_nonnegative(rng, 4, 0.2);
    const auto b = oracle::random_nonnegative(rng, 4, 0.2);
    const auto c = oracle::random_nonnegative(rng, 4, 0.2);
    expect_matrix_near(max_matmul(a, b), oracle::matmul(oracle::dense(a), oracle::dense(b)), 1e-15);
    const auto l = max_matmul(max_matmul(a, b), c);
    const auto r = max_matmul(a, max_matmul(b, c));
    expect_matrix_near(l, oracle::dense(r), 1e-14);
  }
  EXPECT_THROW(max_matmul(MaxMatrix(2), MaxMatrix(3)), Error);
}

TEST(TropicalTest, CycleMeanOfKnownMatrices) {
  EXPECT_DOUBLE_EQ(cycle_mean(MaxMatrix{{0, 2}, {8, 0}}), 4.0);
  EXPECT_DOUBLE_EQ(cycle_mean(MaxMatrix{{0, 1}, {0, 0}}), 0.0);
  EXPECT_NEAR(cycle_mean(MaxMatrix{{3}}), 3.0, 1e-15);
  // Transitive matrices have mu = 1.
  EXPECT_NEAR(cycle_mean(MaxMatrix{{1, 2, 4}, {0.5, 1, 2}, {0.25, 0.5, 1}}), 1.0, 1e-12);
}

TEST(TropicalTest, CycleMeanScalesLinearly) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const auto a = oracle::random_nonnegative(rng, 5, 0.4);
    EXPECT_NEAR(cycle_mean(a.scaled(3.0)), 3.0 * cycle_mean(a), 1e-12 * (1 + cycle_mean(a)));
  }
}

TEST(TropicalProperty, CycleMeanMatchesWalkEnumeration) {
  std::mt19937_64 rng(20240601);
  for (int t = 0; t < 220; ++t) {
    const std::size_t n = 1 + t % 6;
    const auto a = (t % 3 == 0) ? oracle::random_sr(rng, n) : oracle::random_nonnegative(rng, n, 0.5);
    const double want = oracle::cycle_mean(oracle::dense(a));
    EXPECT_TRUE(oracle::close(cycle_mean(a), want, 1e-12)) << "case " << t;
    EXPECT_TRUE(oracle::close(brute_force_cycle_mean(a), want, 1e-12)) << "case " << t;
  }
}

TEST(TropicalTest, KleeneStarRequiresMuAtMostOne) {
  EXPECT_THROW(kleene_star(MaxMatrix{{0, 2}, {1, 0}}), Error);
  const auto s = kleene_star(MaxMatrix{{0, 2}, {0.5, 0}});
  EXPECT_DOUBLE_EQ(s(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(s(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(s(1, 0), 0.5);
}

TEST(TropicalProperty, KleeneStarIdempotentAboveIdentityAndMatchesPaths) {
  std::mt19937_64 rng(777);
  for (int t = 0; t < 220; ++t) {
    const std::size_t n = 1 + t % 6;
    auto a = (t % 2 == 0) ? oracle::random_sr(rng, n) : oracle::random_nonnegative(rng, n, 0.4);
    const double mu = cycle_mean(a);
    if (mu > 0.0) a = a.scaled(1.0 / mu);
    const auto s = kleene_star(a);
    const auto ss = max_matmul(s, s);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GE(s(i, i), 1.0 - 1e-12);
      for (std::size_t j = 0; j < n; ++j) EXPECT_TRUE(oracle::close(ss(i, j), s(i, j), 1e-9)) << "case " << t;
    }
    expect_matrix_near(s, oracle::star(oracle::dense(a)), 1e-9);
  }
}

TEST(TropicalTest, CriticalGraphOfTwoCycle) {
  // Cycle 1->2->1 has mean 4, the loop at 3 has mean 1.
  const MaxMatrix a{{0, 2, 0}, {8, 0, 1}, {1, 0, 1}};
  const auto g = critical_graph(a);
  EXPECT_DOUBLE_EQ(g.mu, 4.0);
  EXPECT_EQ(g.nodes, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(g.is_critical_edge(0, 1));
  EXPECT_TRUE(g.is_critical_edge(1, 0));
  EXPECT_FALSE(g.is_critical_edge(1, 2));
  EXPECT_TRUE(g.is_anticritical_edge(1, 0));
}

TEST(TropicalTest, SpectralProfileOfTransitiveMatrixIsUnique) {
  const MaxMatrix t{{1, 2, 4}, {0.5, 1, 2}, {0.25, 0.5, 1}};
  const auto p = spectral_profile(t);
  EXPECT_NEAR(p.mu, 1.0, 1e-12);
  EXPECT_TRUE(p.unique_direction);
  EXPECT_EQ(p.basis_indices.size(), 1u);
  const auto v = max_eigenvector(t);
  EXPECT_NEAR(v[1], 0.5, 1e-12);
  EXPECT_NEAR(v[2], 0.25, 1e-12);
}

TEST(TropicalTest, SpectralProfileWithSeveralComponents) {
  const MaxMatrix a{{2, 0, 0}, {1, 2, 0}, {0, 1, 1}};
  const auto p = spectral_profile(a);
  EXPECT_DOUBLE_EQ(p.mu, 2.0);
  EXPECT_FALSE(p.unique_direction);
  EXPECT_EQ(p.critical.nodes, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p.basis_indices, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_THROW(spectral_profile(MaxMatrix(3)), Error);
  EXPECT_FALSE(is_irreducible(a));
  EXPECT_THROW(max_eigenvector(a), Error);
}

TEST(TropicalTest, CostMatrixEigenvector) {
  const auto v = max_eigenvector(kCost);
  const auto av = max_matvec(kCost, v);
  const double mu = cycle_mean(kCost);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(av[i], mu * v[i], 1e-12);
}

TEST(TropicalProperty, EigenAndSubeigenvectorsOfSRMatrices) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 5;
    const auto a = oracle::random_sr(rng, n);
    const double mu = cycle_mean(a);
    const auto v = max_eigenvector(a);
    const auto av = max_matvec(a, v);
    const auto z = principal_subeigenvector(a);
    const auto az = max_matvec(a, z);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_TRUE(oracle::close(av[i], mu * v[i], 1e-9)) << "case " << t;
      EXPECT_LE(az[i], mu * z[i] * (1 + 1e-9)) << "case " << t;
    }
    // Every basis vector of the subeigencone is a subeigenvector.
    const auto prof = spectral_profile(a);
    for (const auto& b : prof.basis) {
      const auto ab = oracle::matvec(oracle::dense(a), b);
      for (std::size_t i = 0; i < n; ++i) EXPECT_LE(ab[i], mu * b[i] * (1 + 1e-9));
    }
    // Critical edges lie on cycles attaining mu: a_ij v_j = mu v_i.
    for (const auto& [i, j] : prof.critical.edges) EXPECT_TRUE(oracle::close(a(i, j) * v[j], mu * v[i], 1e-9));
  }
}

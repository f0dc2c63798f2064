#include "plateau/errors.hpp"
#include "plateau/symfunc.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using plateau::CurvatureSpectrum;

TEST(ElementarySymmetric, Examples) {
  EXPECT_DOUBLE_EQ(plateau::elementary_symmetric(2, {1.0, 1.0, 1.0}), 3.0);
  EXPECT_DOUBLE_EQ(plateau::elementary_symmetric(2, {2.0, 2.0, -0.5}), 2.0);
  EXPECT_DOUBLE_EQ(plateau::elementary_symmetric(0, {3.0, -7.0}), 1.0);
  EXPECT_DOUBLE_EQ(plateau::elementary_symmetric(3, {1.0, 2.0, 3.0}), 6.0);
}

TEST(ElementarySymmetric, RangeErrors) {
  const CurvatureSpectrum k{1.0, 2.0};
  EXPECT_THROW(plateau::elementary_symmetric(-1, k), plateau::DomainError);
  EXPECT_THROW(plateau::elementary_symmetric(3, k), plateau::DomainError);
  EXPECT_THROW(plateau::normalized_hk(0, k), plateau::DomainError);
  EXPECT_THROW(plateau::partial_sk(1, k, 2), plateau::DomainError);
  EXPECT_THROW(plateau::partial_sk(1, k, -1), plateau::DomainError);
}

TEST(CurvatureSpectrum, RejectsNonFinite) {
  Eigen::VectorXd v(2);
  v << 1.0, std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(CurvatureSpectrum{v}, plateau::DomainError);
  EXPECT_THROW(CurvatureSpectrum{Eigen::VectorXd()}, plateau::DomainError);
}

TEST(CurvatureSpectrum, SortAndDelete) {
  const CurvatureSpectrum k{0.5, 3.0, -1.0};
  EXPECT_FALSE(k.is_sorted_descending());
  const CurvatureSpectrum s = k.sorted_descending();
  EXPECT_TRUE(s.is_sorted_descending());
  EXPECT_EQ(s[0], 3.0);
  EXPECT_EQ(s[2], -1.0);
  const CurvatureSpectrum d = k.without(1);
  ASSERT_EQ(d.size(), 2);
  EXPECT_EQ(d[0], 0.5);
  EXPECT_EQ(d[1], -1.0);
  EXPECT_EQ(k.without(0, 2).size(), 1);
  EXPECT_EQ(k.without(0, 2)[0], 3.0);
}

TEST(NormalizedHk, Examples) {
  EXPECT_DOUBLE_EQ(plateau::normalized_hk(2, {1.0, 1.0, 1.0, 1.0}), 1.0);
  EXPECT_DOUBLE_EQ(plateau::normalized_hk(2, {2.0, 2.0, -0.5}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(plateau::normalized_hk(1, {3.0, 0.0, 0.0}), 1.0);
}

TEST(PartialSk, Examples) {
  EXPECT_DOUBLE_EQ(plateau::partial_sk(2, {2.0, 2.0, -0.5}, 2), 4.0);
  EXPECT_DOUBLE_EQ(plateau::partial_sk(1, {5.0, -3.0, 0.25}, 1), 1.0);
  EXPECT_DOUBLE_EQ(plateau::partial_sk(2, {1.0, 1.0, 1.0}, 0), 2.0);
}

TEST(SecondPartialSk, Examples) {
  const CurvatureSpectrum k{0.3, -1.2, 4.0, 2.0};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_DOUBLE_EQ(plateau::second_partial_sk(2, k, i, j), i == j ? 0.0 : 1.0);
    }
  }
  EXPECT_DOUBLE_EQ(plateau::second_partial_sk(3, {1.0, 2.0, 3.0}, 0, 1), 3.0);
  EXPECT_THROW(plateau::second_partial_sk(1, k, 0, 1), plateau::DomainError);
}

TEST(GardingCone, Examples) {
  const auto boundary = plateau::in_garding_cone(2, {2.0, 2.0, -1.0});
  EXPECT_FALSE(boundary.member);
  ASSERT_EQ(boundary.slacks.size(), 2u);
  EXPECT_DOUBLE_EQ(boundary.slacks[1], 0.0);

  const auto inside = plateau::in_garding_cone(2, {2.0, 2.0, -0.5});
  EXPECT_TRUE(inside.member);
  EXPECT_DOUBLE_EQ(inside.slacks[0], 3.5);
  EXPECT_DOUBLE_EQ(inside.slacks[1], 2.0);

  EXPECT_TRUE(plateau::in_garding_cone(5, {1.0, 1.0, 1.0, 1.0, 1.0}).member);
  EXPECT_EQ(plateau::in_garding_cone(5, {1.0, 1.0, 1.0, 1.0, 1.0}).k, 5);
}

TEST(Binomial, Values) {
  EXPECT_DOUBLE_EQ(plateau::binomial(5, 2), 10.0);
  EXPECT_DOUBLE_EQ(plateau::binomial(7, 0), 1.0);
  EXPECT_DOUBLE_EQ(plateau::binomial(7, 7), 1.0);
  EXPECT_DOUBLE_EQ(plateau::binomial(3, 5), 0.0);
}

// ---------------------------------------------------------------------------
// Properties, seeded.

class SymfuncProperty : public ::testing::TestWithParam<int> {};

TEST_P(SymfuncProperty, MatchesSubsetEnumeration) {
  const int n = GetParam();
  std::mt19937_64 rng(100 + n);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd x = oracle::gaussian(rng, n);
    const Eigen::VectorXd all = plateau::elementary_symmetric_all(x);
    for (int k = 0; k <= n; ++k) {
      const double ref = oracle::esym_subsets(k, x);
      const double got = plateau::elementary_symmetric(k, CurvatureSpectrum(x));
      EXPECT_NEAR(got, ref, 1e-12 * (1.0 + std::abs(ref))) << "k=" << k;
      EXPECT_NEAR(all[k], ref, 1e-12 * (1.0 + std::abs(ref)));
    }
  }
}

TEST_P(SymfuncProperty, ExpansionAlongAnEntry) {
  const int n = GetParam();
  std::mt19937_64 rng(200 + n);
  for (int trial = 0; trial < 100; ++trial) {
    const CurvatureSpectrum k(oracle::gaussian(rng, n));
    for (int deg = 1; deg <= n; ++deg) {
      for (int i = 0; i < n; ++i) {
        const double lhs = plateau::elementary_symmetric(deg, k);
        const double rhs = k[i] * plateau::partial_sk(deg, k, i) +
                           (deg <= n - 1 ? plateau::elementary_symmetric(deg, k.without(i)) : 0.0);
        EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(lhs)));
      }
    }
  }
}

TEST_P(SymfuncProperty, PartialSums) {
  const int n = GetParam();
  std::mt19937_64 rng(300 + n);
  for (int trial = 0; trial < 100; ++trial) {
    const CurvatureSpectrum k(oracle::gaussian(rng, n));
    for (int deg = 1; deg <= n; ++deg) {
      double sum = 0.0, weighted = 0.0;
      for (int i = 0; i < n; ++i) {
        sum += plateau::partial_sk(deg, k, i);
        weighted += plateau::partial_sk(deg, k, i) * k[i];
      }
      const double sk1 = plateau::elementary_symmetric(deg - 1, k);
      const double sk = plateau::elementary_symmetric(deg, k);
      EXPECT_NEAR(sum, (n - deg + 1) * sk1, 1e-11 * (1.0 + std::abs(sk1) * n));
      EXPECT_NEAR(weighted, deg * sk, 1e-11 * (1.0 + std::abs(sk) * n));
    }
  }
}

TEST_P(SymfuncProperty, NewtonIdentityForS2) {
  const int n = GetParam();
  std::mt19937_64 rng(400 + n);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd x = oracle::gaussian(rng, n);
    const double s1 = x.sum();
    EXPECT_NEAR(2.0 * plateau::s2(x), s1 * s1 - x.squaredNorm(), 1e-12 * (1.0 + s1 * s1));
    EXPECT_NEAR(plateau::partial_sk(2, CurvatureSpectrum(x), 0), s1 - x[0], 1e-12);
  }
}

TEST_P(SymfuncProperty, PermutationInvariance) {
  const int n = GetParam();
  std::mt19937_64 rng(500 + n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd x = oracle::gaussian(rng, n);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = x[perm[i]];
    for (int k = 0; k <= n; ++k) {
      const double a = plateau::elementary_symmetric(k, CurvatureSpectrum(x));
      const double b = plateau::elementary_symmetric(k, CurvatureSpectrum(y));
      EXPECT_NEAR(a, b, 1e-12 * (1.0 + std::abs(a)));
    }
  }
}

TEST_P(SymfuncProperty, K2IsAConvexCone) {
  const int n = GetParam();
  std::mt19937_64 rng(600 + n);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::VectorXd a = oracle::random_k2(rng, n);
    const Eigen::VectorXd b = oracle::random_k2(rng, n);
    ASSERT_TRUE(plateau::in_garding_cone(2, CurvatureSpectrum(a)).member);
    EXPECT_TRUE(plateau::in_garding_cone(2, CurvatureSpectrum(a + b)).member);
    EXPECT_TRUE(plateau::in_garding_cone(2, CurvatureSpectrum(scale(rng) * a)).member);
  }
}

TEST_P(SymfuncProperty, ConeMembershipAgreesWithOracle) {
  const int n = GetParam();
  std::mt19937_64 rng(700 + n);
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::VectorXd x = oracle::gaussian(rng, n);
    x.array() += 0.5;
    const auto label = plateau::in_garding_cone(2, CurvatureSpectrum(x));
    EXPECT_EQ(label.member, oracle::in_k2(x));
    EXPECT_EQ(label.member, label.slacks[0] > 0.0 && label.slacks[1] > 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(Dims, SymfuncProperty, ::testing::Values(2, 3, 4, 5, 6, 7, 8));

TEST(SymfuncLarge, RecurrenceHandlesSixtyFourEntries) {
  Eigen::VectorXd x = Eigen::VectorXd::Ones(64);
  // S_k(1,...,1) = C(64, k)
  for (int k : {0, 1, 2, 5, 32, 63, 64}) {
    const double ref = plateau::binomial(64, k);
    EXPECT_NEAR(plateau::elementary_symmetric(k, CurvatureSpectrum(x)), ref, 1e-12 * ref);
  }
}

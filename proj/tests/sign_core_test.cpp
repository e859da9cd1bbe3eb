#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sphericity/errors.hpp"
#include "sphericity/sign_core.hpp"
#include "test_support.hpp"

namespace sphericity {
namespace {

using testing::gaussian_matrix;

RowMatrix rows(std::initializer_list<std::initializer_list<double>> values) {
  RowMatrix m(values.size(), values.begin()->size());
  int i = 0;
  for (const auto& r : values) {
    int j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

TEST(SampleMatrix, RejectsNonFiniteAndEmpty) {
  RowMatrix bad = RowMatrix::Zero(3, 2);
  bad(1, 1) = std::nan("");
  EXPECT_THROW(SampleMatrix{bad}, InvalidInput);
  bad(1, 1) = INFINITY;
  EXPECT_THROW(SampleMatrix{bad}, InvalidInput);
  EXPECT_THROW(SampleMatrix{RowMatrix(3, 0)}, InvalidInput);
  EXPECT_THROW(SampleMatrix{RowMatrix(0, 3)}, InvalidInput);
}

TEST(SpatialSign, Examples) {
  Eigen::Vector2d x(3.0, 4.0);
  const Eigen::VectorXd u = spatial_sign(x);
  EXPECT_DOUBLE_EQ(u(0), 0.6);
  EXPECT_DOUBLE_EQ(u(1), 0.8);

  EXPECT_EQ(spatial_sign(Eigen::Vector3d::Zero()), Eigen::VectorXd::Zero(3));

  Eigen::VectorXd one(1);
  one << -2.0;
  EXPECT_EQ(spatial_sign(one)(0), -1.0);
}

TEST(SpatialSign, DenormalNormIsATie) {
  Eigen::Vector2d tiny(1e-310, 0.0);
  EXPECT_EQ(spatial_sign(tiny), Eigen::VectorXd::Zero(2));
}

TEST(SpatialSign, RejectsNonFinite) {
  EXPECT_THROW(spatial_sign(Eigen::Vector2d(1.0, NAN)), InvalidInput);
  EXPECT_THROW(spatial_sign(Eigen::Vector2d(INFINITY, 0.0)), InvalidInput);
}

TEST(SpatialSign, NormIsZeroOrOne) {
  const RowMatrix x = gaussian_matrix(50, 7, 11);
  for (int i = 0; i < x.rows(); ++i) {
    const double norm = spatial_sign(x.row(i).transpose()).norm();
    EXPECT_NEAR(norm, 1.0, 1e-12);
  }
}

TEST(PairwiseSigns, TwoPointsInOneDimension) {
  const auto s = pairwise_signs(SampleMatrix(rows({{0.0}, {1.0}})));
  EXPECT_EQ(s.sign(0, 1)(0), -1.0);
  EXPECT_EQ(s.sign(1, 0)(0), 1.0);
  EXPECT_EQ(s.sign(0, 0)(0), 0.0);
  EXPECT_EQ(s.tie_count(), 0);
}

TEST(PairwiseSigns, TiedRowsGiveZeroVector) {
  const auto s = pairwise_signs(SampleMatrix(rows({{1.0, 2.0}, {1.0, 2.0}, {0.0, 0.0}})));
  EXPECT_EQ(s.sign(0, 1), Eigen::VectorXd::Zero(2));
  EXPECT_EQ(s.tie_count(), 1);
  EXPECT_NEAR(s.sign(0, 2).norm(), 1.0, 1e-15);
}

TEST(PairwiseSigns, RequiresTwoObservations) {
  EXPECT_THROW(pairwise_signs(SampleMatrix(rows({{1.0, 2.0}}))), InsufficientSample);
}

TEST(PairwiseSigns, MatchesDirectRecomputation) {
  const SampleMatrix x(gaussian_matrix(5, 3, 5));
  const auto s = pairwise_signs(x);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      const Eigen::VectorXd diff = (x.row(i) - x.row(j)).transpose();
      const Eigen::VectorXd expected = diff / std::sqrt(diff.dot(diff));
      EXPECT_LT((s.sign(i, j) - expected).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
}

TEST(PairwiseSigns, AntisymmetryIsExact) {
  const auto s = pairwise_signs(SampleMatrix(gaussian_matrix(9, 6, 6)));
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j) EXPECT_TRUE((s.sign(j, i).array() == -s.sign(i, j).array()).all());
}

TEST(PairwiseSigns, RotationEquivariance) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RowMatrix x = gaussian_matrix(7, 5, 100 + seed);
    const Eigen::MatrixXd o = testing::random_orthogonal(5, 200 + seed);
    const RowMatrix rotated = x * o.transpose();
    const auto s = pairwise_signs(SampleMatrix(x));
    const auto r = pairwise_signs(SampleMatrix(rotated));
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        EXPECT_LT((r.sign(i, j) - o * s.sign(i, j)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(SignGram, UnitDiagonalAndAntisymmetricPartner) {
  const auto g = sign_gram(pairwise_signs(SampleMatrix(gaussian_matrix(6, 4, 7))));
  EXPECT_EQ(g.size(), 30);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (i == j) continue;
      EXPECT_NEAR(g(i, j, i, j), 1.0, 1e-14);
      EXPECT_NEAR(g(i, j, j, i), -1.0, 1e-14);
    }
}

TEST(SignGram, MatchesNaiveDotProducts) {
  for (int n = 4; n <= 8; ++n) {
    const SampleMatrix x(gaussian_matrix(n, 4, 300 + n));
    const auto s = pairwise_signs(x);
    const auto g = sign_gram(s);
    const RowMatrix& m = g.matrix();
    EXPECT_TRUE(m.isApprox(m.transpose(), 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            if (i == j || k == l) continue;
            double naive = 0.0;
            const Eigen::VectorXd a = s.sign(i, j);
            const Eigen::VectorXd b = s.sign(k, l);
            for (int c = 0; c < a.size(); ++c) naive += a(c) * b(c);
            ASSERT_NEAR(g(i, j, k, l), naive, 1e-12);
            ASSERT_EQ(g(i, j, k, l), -g(j, i, k, l));
          }
  }
}

TEST(SignGram, TiedPairRowIsZero) {
  RowMatrix x = gaussian_matrix(5, 3, 8);
  x.row(1) = x.row(0);
  const auto g = sign_gram(pairwise_signs(SampleMatrix(x)));
  EXPECT_EQ(g.tie_count(), 1);
  EXPECT_EQ(g.matrix().row(g.pair_index(0, 1)).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(g(0, 1, 0, 1), 0.0);
}

TEST(RankCov, TwoPointHandComputation) {
  const Eigen::MatrixXd omega = rank_cov(SampleMatrix(rows({{0.0}, {1.0}})));
  ASSERT_EQ(omega.rows(), 1);
  EXPECT_DOUBLE_EQ(omega(0, 0), 0.25);
}

TEST(RankCov, SymmetricPsdWithTraceBelowOne) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Eigen::MatrixXd omega = rank_cov(SampleMatrix(gaussian_matrix(12, 6, 400 + seed)));
    EXPECT_TRUE(omega.isApprox(omega.transpose(), 1e-15));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(omega);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-14);
    EXPECT_GE(omega.trace(), 0.0);
    EXPECT_LT(omega.trace(), 1.0);
  }
}

TEST(RankCov, TraceNearOneHalfInHighDimension) {
  const Eigen::MatrixXd omega = rank_cov(SampleMatrix(gaussian_matrix(20, 50, 9)));
  EXPECT_NEAR(omega.trace(), 0.5, 0.1);
}

TEST(RankCov, RequiresTwoObservations) {
  EXPECT_THROW(rank_cov(SampleMatrix(rows({{1.0}}))), InsufficientSample);
}

TEST(KendallCov, TraceIsOneWithoutTies) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Eigen::MatrixXd xi = kendall_cov(SampleMatrix(gaussian_matrix(9, 4 + seed, 500 + seed)));
    EXPECT_NEAR(xi.trace(), 1.0, 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(xi);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-14);
  }
}

TEST(KendallCov, TwoPointExample) {
  const Eigen::MatrixXd xi = kendall_cov(SampleMatrix(rows({{1.0, 0.0}, {0.0, 0.0}})));
  EXPECT_DOUBLE_EQ(xi(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(xi(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(xi(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(xi(1, 1), 0.0);
}

TEST(KendallCov, MatchesNaiveLoop) {
  const SampleMatrix x(gaussian_matrix(10, 5, 10));
  Eigen::MatrixXd naive = Eigen::MatrixXd::Zero(5, 5);
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j) {
      const Eigen::VectorXd d = (x.row(i) - x.row(j)).transpose();
      const Eigen::VectorXd u = d / d.norm();
      naive += u * u.transpose();
    }
  naive *= 2.0 / (10.0 * 9.0);
  EXPECT_LT((kendall_cov(x) - naive).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(KendallCov, TiesLowerTheTrace) {
  RowMatrix x = gaussian_matrix(4, 3, 12);
  x.row(3) = x.row(2);
  EXPECT_NEAR(kendall_cov(SampleMatrix(x)).trace(), 5.0 / 6.0, 1e-12);
}

TEST(TauFRatio, SmallDimensionClosedForms) {
  EXPECT_NEAR(tau_f_ratio(1), 2.0 / std::numbers::pi, 1e-12);
  EXPECT_NEAR(tau_f_ratio(2), std::numbers::pi / 4.0, 1e-12);
  // Gamma(2)^2 / (Gamma(1.5) Gamma(2.5)) = 1 / (0.375 pi)
  EXPECT_NEAR(tau_f_ratio(3), 8.0 / (3.0 * std::numbers::pi), 1e-12);
}

TEST(TauFRatio, IncreasingAndBelowOne) {
  double prev = 0.0;
  for (int p = 1; p <= 100; ++p) {
    const double r = tau_f_ratio(p);
    EXPECT_GT(r, prev) << "p=" << p;
    EXPECT_LT(r, 1.0);
    prev = r;
  }
  EXPECT_NEAR(tau_f_ratio(1'000'000), 1.0, 1e-3);
  EXPECT_GT(tau_f_ratio(1000), 0.999);
}

TEST(TauFRatio, RejectsNonPositive) {
  EXPECT_THROW(tau_f_ratio(0), InvalidInput);
  EXPECT_THROW(tau_f_ratio(-3), InvalidInput);
}

}  // namespace
}  // namespace sphericity

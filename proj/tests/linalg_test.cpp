#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "psdcomp/feasibility.hpp"
#include "psdcomp/linalg.hpp"

namespace psdcomp {
namespace {

SymMatrix rows(std::vector<std::vector<double>> r) { return SymMatrix::from_rows(r); }

PartialSymmetricMatrix c4_sign_flip_matrix() {
  return PartialSymmetricMatrix({1, 1, 1, 1}, {{{0, 1}, 1.0}, {{1, 2}, 1.0}, {{2, 3}, 1.0}, {{0, 3}, -1.0}});
}

TEST(SymMatrixTest, RejectsAsymmetry) {
  EXPECT_THROW(rows({{1, 2}, {2.1, 1}}), Error);
  EXPECT_THROW(rows({{1, 2}, {2}}), Error);
  EXPECT_NO_THROW(rows({{1, 2}, {2 + 1e-14, 1}}));
  try {
    rows({{0, 1}, {0, 0}});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}

TEST(SymEigenTest, Examples) {
  EXPECT_TRUE(sym_eigen(SymMatrix::identity(3)).values.isApprox(Eigen::Vector3d(1, 1, 1)));
  const auto diag = sym_eigen(rows({{2, 0, 0}, {0, 0, 0}, {0, 0, -1}}));
  EXPECT_NEAR(diag.values(0), 2, 1e-14);
  EXPECT_NEAR(diag.values(1), 0, 1e-14);
  EXPECT_NEAR(diag.values(2), -1, 1e-14);
  const auto ones = sym_eigen(SymMatrix(Eigen::MatrixXd::Ones(3, 3)));
  EXPECT_NEAR(ones.values(0), 3, 1e-12);
  EXPECT_NEAR(ones.values(1), 0, 1e-12);
  EXPECT_NEAR(ones.values(2), 0, 1e-12);
}

TEST(SymEigenTest, ResidualContract) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 12;
    const Eigen::MatrixXd b = oracle::random_matrix(n, n, rng);
    const SymMatrix a(Eigen::MatrixXd(b + b.transpose()));
    const SymEigen eig = sym_eigen(a);
    const double norm = a.norm();
    for (int i = 0; i < n; ++i) {
      EXPECT_LE((a.matrix() * eig.vectors.col(i) - eig.values(i) * eig.vectors.col(i)).norm(), 1e-9 * (1 + norm));
      if (i > 0) EXPECT_GE(eig.values(i - 1), eig.values(i));
    }
    EXPECT_LE((eig.vectors.transpose() * eig.vectors - Eigen::MatrixXd::Identity(n, n)).norm(), 1e-9);
  }
}

TEST(PsdMinEigTest, Examples) {
  EXPECT_NEAR(psd_min_eig(SymMatrix::identity(4)), 1.0, 1e-15);
  EXPECT_NEAR(psd_min_eig(rows({{1, 1}, {1, 1}})), 0.0, 1e-15);
  // Characteristic polynomial x^2 - x - 1.
  EXPECT_NEAR(psd_min_eig(rows({{1, -1}, {-1, 0}})), (1 - std::sqrt(5.0)) / 2, 1e-14);
}

TEST(NumericRankTest, Examples) {
  EXPECT_EQ(numeric_rank(SymMatrix(Eigen::MatrixXd::Ones(4, 4))), 1);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(numeric_rank(SymMatrix::identity(n)), n);
  EXPECT_THROW(numeric_rank(SymMatrix::identity(2), 0.0), Error);
}

TEST(NumericRankTest, InvariantUnderRotation) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 9;
    const int r = 1 + trial % n;
    const SymMatrix a = oracle::random_psd(n, r, rng);
    const Eigen::MatrixXd q = oracle::random_orthogonal(n, rng);
    const SymMatrix rotated(Eigen::MatrixXd(q * a.matrix() * q.transpose()));
    EXPECT_EQ(numeric_rank(a), r);
    EXPECT_EQ(numeric_rank(rotated), r);
  }
}

TEST(GramFactorTest, Examples) {
  const GramFactor id = gram_factor(SymMatrix::identity(2));
  EXPECT_EQ(id.rank, 2);
  EXPECT_TRUE((id.vectors.transpose() * id.vectors).isApprox(Eigen::MatrixXd::Identity(2, 2)));

  const GramFactor ones = gram_factor(SymMatrix(Eigen::MatrixXd::Ones(3, 3)));
  EXPECT_EQ(ones.rank, 1);
  ASSERT_EQ(ones.vectors.rows(), 1);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(ones.vectors(0, i)), 1.0, 1e-12);
  EXPECT_NEAR(ones.vectors(0, 0), ones.vectors(0, 2), 1e-12);

  const SymMatrix a = rows({{2, 1}, {1, 1}});
  const GramFactor f = gram_factor(a);
  EXPECT_EQ(f.rank, 2);
  EXPECT_LT((f.gram().matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(GramFactorTest, RejectsIndefinite) {
  try {
    gram_factor(rows({{1, -1}, {-1, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPSD);
  }
}

TEST(GramFactorTest, RoundTripOnRandomPsd) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 15;
    const int r = 1 + (trial / 15) % n;
    const SymMatrix a = oracle::random_psd(n, r, rng);
    const GramFactor f = gram_factor(a);
    EXPECT_EQ(f.rank, numeric_rank(a));
    EXPECT_LE((f.gram().matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-8 * (1 + a.max_abs()));
  }
}

TEST(AlignGramTest, IdenticalLists) {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXd p = oracle::random_matrix(3, 2, rng);
  const Eigen::MatrixXd t = align_gram(p, p);
  EXPECT_LE((t * p - p).norm(), 1e-9);
  EXPECT_LE((t.transpose() * t - Eigen::MatrixXd::Identity(3, 3)).norm(), 1e-9);
}

TEST(AlignGramTest, RecoversKnownRotation) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 1 + trial % 7;
    const int s = trial % (r + 3);
    const Eigen::MatrixXd q = oracle::random_matrix(r, s, rng);
    const Eigen::MatrixXd rotation = oracle::random_orthogonal(r, rng);
    const Eigen::MatrixXd p = rotation * q;
    const Eigen::MatrixXd t = align_gram(p, q);
    EXPECT_LE((t.transpose() * t - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff(), 1e-9);
    const double scale = 1 + (s > 0 ? q.colwise().norm().maxCoeff() : 0.0);
    for (int i = 0; i < s; ++i) EXPECT_LE((t * q.col(i) - p.col(i)).norm(), 1e-7 * scale);
  }
}

TEST(AlignGramTest, RankDeficientSpan) {
  // Three vectors in R^4 spanning only a plane.
  std::mt19937_64 rng(6);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(4, 3);
  q.topRows(2) = oracle::random_matrix(2, 3, rng);
  const Eigen::MatrixXd p = oracle::random_orthogonal(4, rng) * q;
  const Eigen::MatrixXd t = align_gram(p, q);
  EXPECT_LE((t.transpose() * t - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-9);
  EXPECT_LE((t * q - p).norm(), 1e-7);
}

TEST(AlignGramTest, EmptyLists) {
  const Eigen::MatrixXd t = align_gram(Eigen::MatrixXd(2, 0), Eigen::MatrixXd(2, 0));
  EXPECT_LE((t.transpose() * t - Eigen::MatrixXd::Identity(2, 2)).norm(), 1e-12);
}

TEST(AlignGramTest, MismatchedGram) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd q = 2 * Eigen::MatrixXd::Identity(2, 2);
  try {
    align_gram(p, q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GramMismatch);
  }
}

TEST(FeasibilityTest, PathHasUniqueAllOnesCompletion) {
  const Graph path = Graph::path(3);
  const PartialSymmetricMatrix partial({1, 1, 1}, {{{0, 1}, 1.0}, {{1, 2}, 1.0}});
  const auto found = affine_psd_feasibility(path, partial, 0.0, 10000, 1e-9);
  ASSERT_TRUE(found);
  EXPECT_NEAR((*found)(0, 2), 1.0, 1e-6);
  EXPECT_EQ(partial.residual(*found), 0.0);
  EXPECT_GE(psd_min_eig(*found), -1e-9);
}

TEST(FeasibilityTest, FourCycleSignFlipIsNotFound) {
  EXPECT_FALSE(affine_psd_feasibility(Graph::cycle(4), c4_sign_flip_matrix(), 0.0, 10000, 1e-9));
}

TEST(FeasibilityTest, EdgelessIsDiagonal) {
  const PartialSymmetricMatrix partial({1, 2, 3}, {});
  const auto found = affine_psd_feasibility(Graph(3), partial, 0.0, 100, 1e-9);
  ASSERT_TRUE(found);
  EXPECT_TRUE(found->matrix().isApprox(Eigen::Vector3d(1, 2, 3).asDiagonal().toDenseMatrix()));
}

TEST(FeasibilityTest, RejectsPatternMismatchAndNegativeShift) {
  const PartialSymmetricMatrix partial({1, 1, 1}, {{{0, 1}, 0.5}});
  EXPECT_THROW(affine_psd_feasibility(Graph::path(3), partial, 0.0, 10, 1e-9), Error);
  EXPECT_THROW(affine_psd_feasibility(Graph(3, {{0, 1}}), partial, -1.0, 10, 1e-9), Error);
}

TEST(FeasibilityTest, WitnessesSatisfyConstraints) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 8;
    const Graph g = oracle::random_graph(n, 0.4, rng);
    const SymMatrix a = oracle::random_psd(n, n, rng);
    const auto partial = PartialSymmetricMatrix::project(g, a);
    const double shift = (trial % 3 == 0) ? 0.5 * psd_min_eig(a) : 0.0;
    const double tol = 1e-8;
    const auto found = affine_psd_feasibility(g, partial, shift, 10000, tol);
    ASSERT_TRUE(found) << "trial " << trial;
    EXPECT_LE(partial.residual(*found), tol);
    EXPECT_GE(psd_min_eig(*found), shift - tol);
  }
}

}  // namespace
}  // namespace psdcomp

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "csense/optimize/continuation.hpp"
#include "csense/optimize/lasso_cd.hpp"
#include "csense/optimize/least_squares.hpp"
#include "csense/optimize/owlqn.hpp"
#include "csense/sampling.hpp"
#include "csense/theta.hpp"
#include "oracles.hpp"

using namespace csense;

namespace {

SolverConfig tight(double lambda) {
  SolverConfig cfg;
  cfg.lambda = lambda;
  cfg.tol = 1e-12;
  cfg.max_iters = 100000;
  return cfg;
}

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) m.col(j) = oracle::random_vector(rng, rows);
  return m;
}

}  // namespace

TEST(SoftThreshold, Examples) {
  EXPECT_EQ(soft_threshold(3.0, 1.0), 2.0);
  EXPECT_EQ(soft_threshold(-3.0, 1.0), -2.0);
  EXPECT_EQ(soft_threshold(0.5, 1.0), 0.0);
  EXPECT_EQ(soft_threshold(-1.0, 1.0), 0.0);
}

TEST(LassoCd, ZeroDataGivesZero) {
  std::mt19937_64 rng(1);
  const Matrix a = random_matrix(rng, 5, 9);
  const auto r = lasso_cd(a, Vector::Zero(5), tight(0.1));
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(r.coeffs.isZero(0.0));
  EXPECT_EQ(r.nnz, 0u);
}

TEST(LassoCd, SingleColumn) {
  Matrix a(2, 1);
  a << 1.0, 0.0;
  Vector y(2);
  y << 3.0, 0.0;
  const auto r = lasso_cd(a, y, tight(1.0));
  EXPECT_NEAR(r.coeffs[0], 2.0, 1e-14);
  EXPECT_NEAR(r.objective_final(), 0.5 + 2.0, 1e-14);
}

TEST(LassoCd, MatchesOwlqnObjectiveOnRandomDesign) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix a = random_matrix(rng, 8, 16);
    const Vector y = oracle::random_vector(rng, 8);
    const double lambda = 1e-3;
    const auto cd = lasso_cd(a, y, tight(lambda));
    const LeastSquaresLoss<DenseOperator> loss(DenseOperator(a), y);
    const auto ow = owlqn_minimize(loss, Vector::Zero(16), tight(lambda));
    const double f_cd = loss.lasso_objective(cd.coeffs, lambda);
    const double f_ow = loss.lasso_objective(ow.coeffs, lambda);
    EXPECT_LE(std::abs(f_cd - f_ow), 1e-6) << rep;
  }
}

TEST(LassoCd, ZeroColumnIsDegenerate) {
  Matrix a = Matrix::Identity(3, 3);
  a.col(1).setZero();
  try {
    lasso_cd(a, Vector::Ones(3), tight(0.1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_column);
  }
}

TEST(LassoCd, DimensionMismatch) {
  EXPECT_THROW(lasso_cd(Matrix::Identity(3, 3), Vector::Ones(4), tight(0.1)), Error);
}

TEST(LassoCd, KktAndMonotoneHistory) {
  std::mt19937_64 rng(3);
  const std::size_t n = 128;
  const ThetaOperator op(n, sample_indices(n, 0.3, 3));
  const Matrix theta = op.dense();
  const Vector y = oracle::random_vector(rng, theta.rows());
  for (double lambda : {1.0, 0.1, 0.01}) {
    const auto r = lasso_cd(theta, y, tight(lambda));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(oracle::lasso_kkt_violation(theta, y, r.coeffs, lambda), 1e-8) << lambda;
    for (std::size_t i = 1; i < r.objective_history.size(); ++i) {
      EXPECT_LE(r.objective_history[i], r.objective_history[i - 1] * (1.0 + 1e-15));
    }
  }
}

TEST(LassoCd, MatrixFreeColumnsMatchDense) {
  std::mt19937_64 rng(4);
  const std::size_t n = 64;
  const ThetaOperator op(n, sample_indices(n, 0.5, 4));
  const Vector y = oracle::random_vector(rng, static_cast<Eigen::Index>(op.rows()));
  const auto dense = lasso_cd(op.dense(), y, tight(0.05));
  const auto free = lasso_cd(op, y, tight(0.05));
  EXPECT_LT((dense.coeffs - free.coeffs).norm(), 1e-9);
}

TEST(LassoCd, AboveLambdaMaxSolutionIsZero) {
  std::mt19937_64 rng(5);
  const Matrix a = random_matrix(rng, 10, 20);
  const Vector y = oracle::random_vector(rng, 10);
  const double lambda_max = (a.transpose() * y).lpNorm<Eigen::Infinity>();
  EXPECT_TRUE(lasso_cd(a, y, tight(lambda_max * 1.0001)).coeffs.isZero(0.0));
  EXPECT_GT(lasso_cd(a, y, tight(lambda_max * 0.9)).nnz, 0u);
}

TEST(LambdaSchedule, GeometricDescentToTarget) {
  const auto s = lambda_schedule(1.0, 1e-4, 0.1);
  ASSERT_FALSE(s.empty());
  EXPECT_EQ(s.back(), 1e-4);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s[i], s[i - 1]);
  EXPECT_EQ(lambda_schedule(1.0, 2.0, 0.1), std::vector<double>{2.0});
}

TEST(Continuation, ReachesSameMinimizerAsColdStart) {
  std::mt19937_64 rng(6);
  const std::size_t n = 64;
  const ThetaOperator op(n, sample_indices(n, 0.5, 6));
  const Matrix theta = op.dense();
  const Vector y = oracle::random_vector(rng, theta.rows());
  const SolverConfig cfg = tight(1e-3);
  const DenseDesign design(theta);
  const double lambda_max = (theta.transpose() * y).lpNorm<Eigen::Infinity>();
  const auto warm = solve_with_continuation(
      [&](const SolverConfig& c, const Vector& x0) { return lasso_cd(design, y, c, &x0); }, cfg, lambda_max,
      Vector::Zero(static_cast<Eigen::Index>(n)));
  const auto cold = lasso_cd(theta, y, cfg);
  EXPECT_LT((warm.coeffs - cold.coeffs).norm(), 1e-8);
  EXPECT_GE(warm.iterations, 1);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "csense/optimize/bfgs.hpp"
#include "csense/optimize/lbfgs.hpp"
#include "csense/optimize/least_squares.hpp"
#include "csense/sampling.hpp"
#include "csense/theta.hpp"
#include "oracles.hpp"

using namespace csense;

namespace {

struct Quadratic {
  Matrix a;
  Vector b;
  double operator()(const Vector& x, Vector& g) const {
    g = a * x - b;
    return 0.5 * x.dot(a * x) - b.dot(x);
  }
};

double rosenbrock(const Vector& v, Vector& g) {
  const double x = v[0], y = v[1];
  g.resize(2);
  g << -2.0 * (1.0 - x) - 400.0 * x * (y - x * x), 200.0 * (y - x * x);
  return (1.0 - x) * (1.0 - x) + 100.0 * (y - x * x) * (y - x * x);
}

}  // namespace

TEST(LbfgsDirection, EmptyMemoryIsSteepestDescent) {
  std::mt19937_64 rng(1);
  const LbfgsMemory mem(5);
  const Vector g = oracle::random_vector(rng, 7);
  EXPECT_EQ(lbfgs_direction(mem, g), -g);
}

TEST(LbfgsDirection, OneDimensionalQuadratic) {
  LbfgsMemory mem(3);
  const double a = 4.0;
  Vector dx(1), dy(1), g(1);
  dx << 0.5;
  dy << a * 0.5;
  ASSERT_TRUE(mem.push(dx, dy));
  g << 3.0;
  EXPECT_NEAR(lbfgs_direction(mem, g)[0], -3.0 / a, 1e-15);
}

TEST(LbfgsDirection, ConjugatePairsOnQuadraticInvertHessian) {
  // Pairs along the eigenvectors of A are mutually A-conjugate, so the
  // recursion reproduces A^{-1} exactly once all n are stored.
  std::mt19937_64 rng(2);
  const int n = 6;
  const Matrix a = oracle::random_spd(rng, n);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  LbfgsMemory mem(n);
  for (int i = 0; i < n; ++i) {
    const Vector dx = eig.eigenvectors().col(i);
    ASSERT_TRUE(mem.push(dx, a * dx));
  }
  for (int rep = 0; rep < 10; ++rep) {
    const Vector g = oracle::random_vector(rng, n);
    const Vector expected = -a.ldlt().solve(g);
    EXPECT_LT((lbfgs_direction(mem, g) - expected).norm(), 1e-8 * expected.norm());
  }
}

TEST(LbfgsDirection, AgreesWithDenseBfgsRecursion) {
  std::mt19937_64 rng(3);
  const int n = 5;
  const Matrix a = oracle::random_spd(rng, n);
  for (int m = 1; m <= 4; ++m) {
    LbfgsMemory mem(static_cast<std::size_t>(m));
    std::vector<std::pair<Vector, Vector>> pairs;
    for (int i = 0; i < m; ++i) {
      const Vector dx = oracle::random_vector(rng, n);
      const Vector dy = a * dx;
      mem.push(dx, dy);
      pairs.emplace_back(dx, dy);
    }
    Matrix b = Matrix::Identity(n, n) / mem.gamma();
    for (const auto& [dx, dy] : pairs) b = bfgs_update(b, dx, dy);
    const Vector g = oracle::random_vector(rng, n);
    const Vector dense = -b.ldlt().solve(g);
    EXPECT_LT((lbfgs_direction(mem, g) - dense).norm(), 1e-10 * dense.norm()) << "m = " << m;
  }
}

TEST(LbfgsMemory, CurvatureSkipAndEviction) {
  LbfgsMemory mem(2);
  const Vector e0 = Vector::Unit(2, 0), e1 = Vector::Unit(2, 1);
  EXPECT_FALSE(mem.push(e0, -e0));
  EXPECT_FALSE(mem.push(e0, e1));
  EXPECT_TRUE(mem.empty());
  EXPECT_TRUE(mem.push(e0, 2.0 * e0));
  EXPECT_TRUE(mem.push(e1, 3.0 * e1));
  EXPECT_TRUE(mem.push(e0, 4.0 * e0));
  ASSERT_EQ(mem.size(), 2u);
  EXPECT_EQ(mem.pairs().front().dy, 3.0 * e1);
  EXPECT_EQ(mem.pairs().back().dy, 4.0 * e0);
  EXPECT_NEAR(mem.gamma(), 0.25, 1e-15);
  EXPECT_THROW(LbfgsMemory(0), Error);
}

TEST(LbfgsMinimize, QuadraticTwoDimensions) {
  Quadratic q{Matrix::Identity(2, 2), Vector::Ones(2)};
  q.a(1, 1) = 3.0;
  SolverConfig cfg;
  cfg.tol = 1e-12;
  const auto r = lbfgs_minimize(q, Vector::Zero(2), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.coeffs[0], 1.0, 1e-8);
  EXPECT_NEAR(r.coeffs[1], 1.0 / 3.0, 1e-8);
}

TEST(LbfgsMinimize, Rosenbrock) {
  SolverConfig cfg;
  cfg.tol = 1e-12;
  cfg.max_iters = 200;
  Vector x0(2);
  x0 << -1.2, 1.0;
  const auto r = lbfgs_minimize(rosenbrock, x0, cfg);
  EXPECT_LE(r.objective_final(), 1e-10);
  EXPECT_LE(r.iterations, 200);
}

TEST(LbfgsMinimize, HistoryIsMonotone) {
  SolverConfig cfg;
  cfg.tol = 1e-12;
  Vector x0(2);
  x0 << -1.2, 1.0;
  const auto r = lbfgs_minimize(rosenbrock, x0, cfg);
  for (std::size_t i = 1; i < r.objective_history.size(); ++i) {
    EXPECT_LE(r.objective_history[i], r.objective_history[i - 1]);
  }
}

TEST(LbfgsMinimize, IterationCapReportsNotConverged) {
  SolverConfig cfg;
  cfg.tol = 1e-14;
  cfg.max_iters = 3;
  Vector x0(2);
  x0 << -1.2, 1.0;
  const auto r = lbfgs_minimize(rosenbrock, x0, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
}

TEST(LbfgsMinimize, RejectsNonFiniteStart) {
  Vector x0(2);
  x0 << std::nan(""), 1.0;
  EXPECT_THROW(lbfgs_minimize(rosenbrock, x0, SolverConfig{}), Error);
  EXPECT_THROW(lbfgs_minimize(rosenbrock, Vector(), SolverConfig{}), Error);
}

TEST(LbfgsMinimize, SplitValueAndGradient) {
  SolverConfig cfg;
  cfg.tol = 1e-12;
  const auto r = lbfgs_minimize([](const Vector& x) { return (x.array() - 2.0).square().sum(); },
                                [](const Vector& x) -> Vector { return 2.0 * (x.array() - 2.0).matrix(); },
                                Vector::Zero(4), cfg);
  EXPECT_LT((r.coeffs - Vector::Constant(4, 2.0)).norm(), 1e-8);
}

TEST(LeastSquaresLoss, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(4);
  const std::size_t n = 48;
  const ThetaOperator op(n, sample_indices(n, 0.5, 4));
  const Vector y = oracle::random_vector(rng, static_cast<Eigen::Index>(op.rows()));
  const LeastSquaresLoss<ThetaOperator> loss(op, y);
  for (int rep = 0; rep < 20; ++rep) {
    const Vector s = oracle::random_vector(rng, static_cast<Eigen::Index>(n));
    Vector g;
    loss(s, g);
    const Vector fd = oracle::finite_difference_gradient([&](const Vector& v) { return loss.value(v); }, s, 1e-6);
    EXPECT_LE((g - fd).norm(), 1e-5 * std::max(1.0, g.norm()));
  }
}

TEST(LbfgsMinimize, UnderdeterminedLeastSquaresFromZeroReachesMinimumNorm) {
  std::mt19937_64 rng(5);
  const std::size_t n = 64;
  const ThetaOperator op(n, sample_indices(n, 0.25, 5));
  const Vector y = oracle::random_vector(rng, static_cast<Eigen::Index>(op.rows()));
  const LeastSquaresLoss<ThetaOperator> loss(op, y);
  SolverConfig cfg;
  cfg.tol = 1e-14;
  cfg.max_iters = 5000;
  const auto r = lbfgs_minimize(loss, Vector::Zero(static_cast<Eigen::Index>(n)), cfg);
  const Vector expected = oracle::min_norm_solution(op.dense(), y);
  EXPECT_LT((r.coeffs - expected).norm(), 1e-6 * expected.norm());
}
